#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "grfgen/errors.hpp"
#include "grfgen/fft.hpp"
#include "grfgen/grid.hpp"
#include "grfgen/math.hpp"
#include "grfgen/structure.hpp"

namespace grfgen {

/// Two-point correlation over circular (periodic) lags: R(l) is the
/// probability that two cells separated by the lattice lag l are both solid.
/// R(0) equals the measured solid fraction.
struct CorrelationMap {
  Grid<double> values;
  double source_solid_fraction = 0.0;
};

enum class ProfileKind { AngularAverage, AxisX, AxisY, AxisZ };

inline std::string to_string(ProfileKind kind, bool normalized) {
  const char* base = nullptr;
  switch (kind) {
    case ProfileKind::AngularAverage: base = "angular_average"; break;
    case ProfileKind::AxisX: base = "axis_x"; break;
    case ProfileKind::AxisY: base = "axis_y"; break;
    case ProfileKind::AxisZ: base = "axis_z"; break;
  }
  return normalized ? std::string("normalized_") + base : std::string(base);
}

/// Radial or axial correlation profile. Lags are in units of the domain
/// length; counts hold the number of lattice lag vectors behind each value
/// (1 for axial profiles).
struct CorrelationProfile {
  std::vector<double> lags;
  std::vector<double> values;
  std::vector<std::size_t> counts;
  ProfileKind kind = ProfileKind::AngularAverage;
  bool normalized = false;
};

/// Circular autocorrelation of the occupancy grid via the Wiener-Khinchin
/// route: R = inverse_fft(|fft(Z)|^2) / V. The padded-field alternative is
/// deliberately not used; wraparound bias at large lags is accepted and
/// profiles are only reported out to lag 1/2.
inline CorrelationMap two_point_correlation(const Microstructure& ms, int threads = 0) {
  const std::size_t total = ms.occupancy.size();
  if (total == 0) throw std::invalid_argument("two_point_correlation: empty grid");

  std::vector<std::complex<double>> work(total);
  const auto& occ = ms.occupancy.values();
  for (std::size_t i = 0; i < total; ++i) work[i] = {static_cast<double>(occ[i]), 0.0};

  fft_nd(work, ms.extents(), /*inverse=*/false, threads);
  for (auto& v : work) v = {v.real() * v.real() + v.imag() * v.imag(), 0.0};
  fft_nd(work, ms.extents(), /*inverse=*/true, threads);

  CorrelationMap map;
  map.values = Grid<double>(ms.extents());
  map.source_solid_fraction = ms.measured_solid_fraction;
  const double inv_total = 1.0 / static_cast<double>(total);
  double residue = 0.0;
  auto& out = map.values.values();
  for (std::size_t i = 0; i < total; ++i) {
    out[i] = work[i].real() * inv_total;
    residue = std::max(residue, std::abs(work[i].imag()) * inv_total);
  }
  if (residue > 1e-9)
    throw analysis_error("two_point_correlation: imaginary residue " + std::to_string(residue) +
                         " exceeds 1e-9");
  return map;
}

namespace detail {

/// Minimum-image displacement of lattice index i on an axis of extent n,
/// in cells (i = n/2 maps to +n/2).
inline std::ptrdiff_t min_image(std::size_t i, std::size_t n) {
  return i > n / 2 ? static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(n)
                   : static_cast<std::ptrdiff_t>(i);
}

}  // namespace detail

/// Angular (spherical/circular) average of the correlation map.
///
/// Lag vectors are taken minimum-image, binned by Euclidean length with bin
/// width equal to one grid spacing (the finest, for anisotropic extents),
/// and reported at bin centers out to lag 1/2. The r=0 bin holds exactly the
/// zero lag, so g(0) equals the solid fraction.
inline CorrelationProfile angular_average(const CorrelationMap& map) {
  const auto& extents = map.values.extents();
  const int dim = map.values.dimension();

  double width = 1.0;
  for (int d = 0; d < dim; ++d) width = std::min(width, map.values.spacing(d));
  // bin centers 0, w, 2w, ... up to lag 1/2
  const std::size_t bins = static_cast<std::size_t>(std::floor(0.5 / width)) + 1;

  std::vector<double> sums(bins, 0.0);
  std::vector<std::size_t> counts(bins, 0);

  const std::size_t nx = extents[0];
  const std::size_t ny = extents[1];
  const std::size_t nz = dim == 3 ? extents[2] : 1;
  const double hx = map.values.spacing(0);
  const double hy = map.values.spacing(1);
  const double hz = dim == 3 ? map.values.spacing(2) : 0.0;

  std::size_t idx = 0;
  for (std::size_t k = 0; k < nz; ++k) {
    const double dz = dim == 3 ? static_cast<double>(detail::min_image(k, nz)) * hz : 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
      const double dy = static_cast<double>(detail::min_image(j, ny)) * hy;
      for (std::size_t i = 0; i < nx; ++i, ++idx) {
        const double dx = static_cast<double>(detail::min_image(i, nx)) * hx;
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        const std::size_t bin = static_cast<std::size_t>(std::floor(r / width + 0.5));
        if (bin < bins) {
          sums[bin] += map.values[idx];
          ++counts[bin];
        }
      }
    }
  }

  CorrelationProfile profile;
  profile.kind = ProfileKind::AngularAverage;
  for (std::size_t b = 0; b < bins; ++b) {
    if (counts[b] == 0) continue;  // possible for anisotropic extents
    profile.lags.push_back(static_cast<double>(b) * width);
    profile.values.push_back(sums[b] / static_cast<double>(counts[b]));
    profile.counts.push_back(counts[b]);
  }
  return profile;
}

/// One-dimensional correlation along a coordinate axis: the map line through
/// the origin, lags 0 .. extent/2 (minimum image).
inline CorrelationProfile directional_correlation(const CorrelationMap& map, int axis) {
  const int dim = map.values.dimension();
  if (axis < 0 || axis >= dim)
    throw std::domain_error("directional_correlation: axis out of range");

  const std::size_t n = map.values.extent(axis);
  const double h = map.values.spacing(axis);

  CorrelationProfile profile;
  profile.kind = axis == 0 ? ProfileKind::AxisX : (axis == 1 ? ProfileKind::AxisY : ProfileKind::AxisZ);
  for (std::size_t l = 0; l <= n / 2; ++l) {
    std::size_t coords[3] = {0, 0, 0};
    coords[axis] = l;
    profile.lags.push_back(static_cast<double>(l) * h);
    profile.values.push_back(map.values(coords[0], coords[1], coords[2]));
    profile.counts.push_back(1);
  }
  return profile;
}

inline CorrelationProfile directional_correlation(const Microstructure& ms, int axis,
                                                  int threads = 0) {
  return directional_correlation(two_point_correlation(ms, threads), axis);
}

/// Normalized profile (g - phi^2)/(phi - phi^2): 1 at zero lag, 0 at the
/// no-correlation asymptote.
inline CorrelationProfile normalize_profile(const CorrelationProfile& profile,
                                            double solid_fraction) {
  if (!(solid_fraction > 0.0 && solid_fraction < 1.0))
    throw analysis_error("normalize_profile: degenerate structure (phi = " +
                         std::to_string(solid_fraction) + ")");
  CorrelationProfile out = profile;
  const double denom = solid_fraction - solid_fraction * solid_fraction;
  for (double& v : out.values) v = (v - solid_fraction * solid_fraction) / denom;
  out.normalized = true;
  return out;
}

/// Specific surface area (interface area per solid volume) from the initial
/// slope of the angular-averaged correlation: SSA = -(4/phi) dg/dr at r->0.
/// The slope is the least-squares fit over the r=0 point and the first three
/// nonzero-lag bins. A non-negative slope yields SSA <= 0, which signals
/// structure below the grid resolution; callers should warn.
inline double specific_surface_area(const CorrelationProfile& profile, double solid_fraction) {
  if (profile.normalized)
    throw analysis_error("specific_surface_area: expects the raw (unnormalized) profile");
  if (profile.values.size() < 4)
    throw analysis_error("specific_surface_area: profile needs at least 4 bins");
  // phi = 1 (no interface anywhere) is well-defined and yields 0; only a
  // vanishing solid fraction has no surface-per-solid-volume.
  if (!(solid_fraction > 0.0 && solid_fraction <= 1.0))
    throw analysis_error("specific_surface_area: degenerate structure (phi = " +
                         std::to_string(solid_fraction) + ")");
  const double slope = least_squares_slope(profile.lags, profile.values, 4);
  return -4.0 / solid_fraction * slope;
}

}  // namespace grfgen
