#include "critising/log_weight.hpp"

#include <algorithm>

namespace critising {

LogWeight operator+(LogWeight a, LogWeight b) {
  LogSumExp acc;
  acc.add(a);
  acc.add(b);
  return acc.result();
}

void LogSumExp::add(double x) {
  if (std::isinf(x) && x < 0) return;
  if (x <= max_) {
    scaled_sum_ += std::exp(x - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - x) + 1.0;
    max_ = x;
  }
}

void LogSumExp::add_block(std::span<const double> xs) {
  if (xs.empty()) return;
  const double block_max = *std::max_element(xs.begin(), xs.end());
  if (std::isinf(block_max) && block_max < 0) return;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - block_max);
  if (block_max <= max_) {
    scaled_sum_ += sum * std::exp(block_max - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - block_max) + sum;
    max_ = block_max;
  }
}

LogWeight LogSumExp::result() const {
  if (scaled_sum_ == 0.0) return LogWeight::zero();
  return {max_ + std::log(scaled_sum_)};
}

LogWeight log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.result();
}

}  // namespace critising
