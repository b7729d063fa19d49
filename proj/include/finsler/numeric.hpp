#ifndef FINSLER_NUMERIC_HPP
#define FINSLER_NUMERIC_HPP

#include <algorithm>
#include <cmath>

namespace finsler {

/// Real odd cube root: signed_cbrt(-8) == -2.
inline double signed_cbrt(double x) noexcept { return std::cbrt(x); }

/// x^(2/3) taken as signed_cbrt(x)^2, hence never negative.
inline double two_thirds_power(double x) noexcept {
  const double r = signed_cbrt(x);
  return r * r;
}

/// |a - b| / max(1, |b|): absolute near zero, relative for large values.
inline double mixed_error(double a, double b) noexcept {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

/// |a - b| / scale with scale > 0 supplied by the caller.
inline double scaled_error(double a, double b, double scale) noexcept {
  return std::abs(a - b) / scale;
}

/// Cumulative composite trapezoid on a uniform grid of spacing h.
template <class Range>
double trapezoid(const Range& values, double h) {
  const auto n = std::size(values);
  if (n < 2) return 0.0;
  double s = 0.0;
  auto it = std::begin(values);
  double prev = *it;
  for (++it; it != std::end(values); ++it) {
    s += 0.5 * h * (prev + *it);
    prev = *it;
  }
  return s;
}

}  // namespace finsler

#endif  // FINSLER_NUMERIC_HPP
