#pragma once

#include <cmath>
#include <span>

namespace ccclt {

// Neumaier (improved Kahan-Babuska) compensated accumulator.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum of a contiguous range in index order. The result depends
/// only on the values and their order, never on how they were produced.
inline double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc += v;
  return acc.value();
}

}  // namespace ccclt
