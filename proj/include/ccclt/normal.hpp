#pragma once

#include <cmath>
#include <numbers>

namespace ccclt {

/// Standard normal CDF.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace ccclt
