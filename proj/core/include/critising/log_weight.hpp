#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace critising {

// A nonnegative weight stored as its natural logarithm; -inf is zero weight.
struct LogWeight {
  double value = -std::numeric_limits<double>::infinity();

  static LogWeight zero() { return {}; }
  static LogWeight one() { return {0.0}; }
  bool is_zero() const { return std::isinf(value) && value < 0; }

  friend LogWeight operator*(LogWeight a, LogWeight b) { return {a.value + b.value}; }
  friend LogWeight operator+(LogWeight a, LogWeight b);
};

// Streaming log-sum-exp. Terms are folded strictly in the order they are
// added, so identical input sequences give bit-identical results.
class LogSumExp {
 public:
  void add(double x);
  void add(LogWeight w) { add(w.value); }
  // Folds a block as a unit: max of the block first, then one rescale.
  void add_block(std::span<const double> xs);

  LogWeight result() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_sum_ = 0.0;
};

LogWeight log_sum_exp(std::span<const double> xs);

}  // namespace critising
