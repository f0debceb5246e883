#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace critising {

// Philox4x32-10 counter-based generator. The 64-bit key is (seed, stream);
// each 128-bit counter value yields four 32-bit outputs. Streams with
// different ids are independent, which is how replicas are split.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static Counter block(Counter counter, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  Key key_;
  Counter counter_;
  Counter buffer_{};
  int index_ = 4;
};

}  // namespace critising
