#pragma once

// Removable-singularity helpers. All are even or smooth through zero and
// switch to truncated Taylor series where the direct quotient cancels.

#include <cmath>
#include <numbers>

namespace pdmwell::special {

inline constexpr double kEulerGamma = std::numbers::egamma;

/// sin(x)/x.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

/// atanh(x)/x for |x| < 1; equals 1 at x = 0.
inline double atanh_ratio(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 + x2 * (1.0 / 3.0 + x2 * (1.0 / 5.0 + x2 * (1.0 / 7.0 + x2 / 9.0)));
  }
  return std::atanh(x) / x;
}

/// (atanh(x)/x - 1)/x^2 = 1/3 + x^2/5 + x^4/7 + ...
inline double atanh_ratio_excess(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.25) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double add = term / (2.0 * k + 3.0);
      sum += add;
      if (add < 1e-18 * sum) break;
      term *= x2;
    }
    return sum;
  }
  return (std::atanh(x) / x - 1.0) / x2;
}

/// log1p(y)/y; equals 1 at y = 0.
inline double log1p_ratio(double y) {
  if (std::abs(y) < 1e-8) return 1.0 - y / 2.0 + y * y / 3.0;
  return std::log1p(y) / y;
}

/// expm1(y)/y; equals 1 at y = 0.
inline double expm1_ratio(double y) {
  if (std::abs(y) < 1e-8) return 1.0 + y / 2.0 + y * y / 6.0;
  return std::expm1(y) / y;
}

}  // namespace pdmwell::special
