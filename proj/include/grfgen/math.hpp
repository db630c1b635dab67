#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace grfgen {

/// Inverse error function on (-1, 1).
///
/// Initial guess from the Winitzki global approximation (relative error
/// ~2e-3), polished by Newton iterations on erf(y) - x. std::erf is accurate
/// to about 1 ulp, so three quadratic steps reach full double precision;
/// the absolute error stays well below 1e-10 over the whole open interval.
inline double erf_inverse(double x) {
  if (!(x > -1.0 && x < 1.0))
    throw std::domain_error("erf_inverse: argument must lie in (-1, 1)");
  if (x == 0.0) return 0.0;

  constexpr double a = 0.147;
  const double ln1mx2 = std::log1p(-x * x);
  const double t = 2.0 / (std::numbers::pi * a) + 0.5 * ln1mx2;
  double y = std::sqrt(std::sqrt(t * t - ln1mx2 / a) - t);
  if (x < 0.0) y = -y;

  const double two_over_sqrt_pi = 2.0 / std::sqrt(std::numbers::pi);
  for (int iter = 0; iter < 6; ++iter) {
    const double err = std::erf(y) - x;
    const double deriv = two_over_sqrt_pi * std::exp(-y * y);
    const double step = err / deriv;
    y -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(y))) break;
  }
  return y;
}

/// Least-squares slope of y against x. Used for the initial-slope estimate
/// of the angular-averaged correlation.
inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y,
                                  std::size_t count) {
  if (count < 2 || x.size() < count || y.size() < count)
    throw std::invalid_argument("least_squares_slope: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace grfgen
