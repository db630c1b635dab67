#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "grfgen/config.hpp"
#include "grfgen/errors.hpp"
#include "grfgen/grid.hpp"
#include "grfgen/parallel.hpp"
#include "grfgen/random.hpp"

namespace grfgen {

/// The sampled wave set defining one Gaussian random field realization:
/// field(r) = N^(-1/2) * sum_n cos(q_n . r + phase_n).
///
/// Wavevectors are stored as 3-vectors with the unused component zero in 2D.
struct SpectralField {
  int dimension = 0;
  std::vector<std::array<double, 3>> wavevectors;
  std::vector<double> phases;  ///< each in [0, 2pi)

  std::size_t wave_count() const { return wavevectors.size(); }
};

/// Counters for the positivity rejection loop of the normal distribution.
/// When more draws are rejected than kept, the sampled mean is biased upward
/// relative to the requested one; callers should surface a warning.
struct MagnitudeStats {
  std::size_t rejected = 0;
  bool bias_warning = false;
};

/// Draw `count` wavenumbers |q| = 2*pi*m (domain length 1) with grains-per-
/// length m from the chosen distribution with mean `mean_grains` and standard
/// deviation `heterogeneity`.
///
/// Gamma parameters are matched to the requested first two moments:
/// shape = (mean/sd)^2, scale = sd^2/mean. Normal draws with m <= 0 are
/// rejected and redrawn so that every wavenumber is strictly positive.
inline std::vector<double> sample_magnitudes(Distribution distribution, double mean_grains,
                                             double heterogeneity, std::size_t count, Rng& rng,
                                             MagnitudeStats* stats = nullptr) {
  if (!(mean_grains > 0.0)) throw config_error("mean_grains must be > 0");
  if (!(heterogeneity > 0.0)) throw config_error("heterogeneity must be > 0");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out;
  out.reserve(count);
  std::size_t rejected = 0;

  if (distribution == Distribution::Gamma) {
    const double shape = (mean_grains / heterogeneity) * (mean_grains / heterogeneity);
    const double scale = heterogeneity * heterogeneity / mean_grains;
    for (std::size_t n = 0; n < count; ++n) {
      double m = rng.gamma(shape, scale);
      while (m <= 0.0) {  // only reachable through underflow at tiny shapes
        ++rejected;
        m = rng.gamma(shape, scale);
      }
      out.push_back(two_pi * m);
    }
  } else {
    for (std::size_t n = 0; n < count; ++n) {
      double m = rng.normal(mean_grains, heterogeneity);
      while (m <= 0.0) {
        ++rejected;
        m = rng.normal(mean_grains, heterogeneity);
      }
      out.push_back(two_pi * m);
    }
  }

  if (stats) {
    stats->rejected = rejected;
    stats->bias_warning = rejected > count;  // acceptance rate below 50%
  }
  return out;
}

/// Draw `count` unit direction vectors.
///
/// For anisotropy a = 1 directions are uniform on the unit circle/sphere.
/// For a < 1 the component along the grain-elongation axis is scaled by a and
/// the vector renormalized; suppressing wavevector content along an axis
/// makes the field vary slowly there, elongating grains along that axis.
/// The construction is continuous in a and recovers the uniform case at a=1.
inline std::vector<std::array<double, 3>> sample_directions(int dimension, double anisotropy,
                                                            std::optional<PreferredAxis> preferred,
                                                            std::size_t count, Rng& rng) {
  if (dimension != 2 && dimension != 3) throw config_error("dim must be 2 or 3");
  if (!(anisotropy > 0.0 && anisotropy <= 1.0))
    throw config_error("anisotropy must be in (0,1]");
  const bool anisotropic = anisotropy < 1.0;
  if (anisotropic && !preferred)
    throw config_error("preferred must be set (horizontal|vertical) when anisotropy < 1");

  const int scaled_axis =
      anisotropic ? (*preferred == PreferredAxis::Horizontal ? 0 : dimension - 1) : 0;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  std::vector<std::array<double, 3>> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::array<double, 3> d{0.0, 0.0, 0.0};
    if (dimension == 2) {
      const double theta = two_pi * rng.uniform();
      d = {std::cos(theta), std::sin(theta), 0.0};
    } else {
      // z uniform on [-1,1], azimuth uniform: area-preserving sphere sampling
      const double z = 1.0 - 2.0 * rng.uniform();
      const double theta = two_pi * rng.uniform();
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      d = {s * std::cos(theta), s * std::sin(theta), z};
    }
    if (anisotropic) {
      d[static_cast<std::size_t>(scaled_axis)] *= anisotropy;
      const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      for (double& c : d) c /= norm;
    }
    out.push_back(d);
  }
  return out;
}

/// Sample the full wave set for a configuration. The draw order is fixed --
/// all magnitudes, then all directions, then all phases -- so a given seed
/// reproduces the field bit-exactly.
inline SpectralField build_spectral_field(const GeneratorConfig& config, Rng& rng,
                                          MagnitudeStats* stats = nullptr) {
  config.validate();
  const std::size_t n = config.num_waves;

  const std::vector<double> magnitudes = sample_magnitudes(
      config.distribution, config.mean_grains, config.heterogeneity, n, rng, stats);
  const std::vector<std::array<double, 3>> directions = sample_directions(
      config.dimension, config.anisotropy, config.preferred_axis, n, rng);

  SpectralField field;
  field.dimension = config.dimension;
  field.wavevectors.resize(n);
  field.phases.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    field.wavevectors[i] = {magnitudes[i] * directions[i][0], magnitudes[i] * directions[i][1],
                            magnitudes[i] * directions[i][2]};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) field.phases[i] = two_pi * rng.uniform();
  return field;
}

/// Convenience overload seeding the generator from the config.
inline SpectralField build_spectral_field(const GeneratorConfig& config,
                                          MagnitudeStats* stats = nullptr) {
  Rng rng(config.seed);
  return build_spectral_field(config, rng, stats);
}

/// Evaluate the field at every cell center of a regular grid.
///
/// The cosine of the per-cell phase is split over the axes with the angle
/// addition identity, using per-axis trig tables precomputed per wave. The
/// hot loop is then free of transcendentals: for a row at fixed (j,k),
///   value(i) += cx[i]*cos(ay_j + az_k + phase) - sx[i]*sin(...).
/// Rows are distributed over workers; each cell accumulates its waves in
/// index order, so the result is bit-identical for any worker count.
inline ScalarGrid evaluate(const SpectralField& field, const std::vector<std::size_t>& extents,
                           int threads = 0) {
  const int dim = field.dimension;
  if (dim != 2 && dim != 3) throw config_error("SpectralField dimension must be 2 or 3");
  if (field.wave_count() == 0 || field.phases.size() != field.wavevectors.size())
    throw config_error("evaluate: field must carry at least one wave with matching phases");
  if (extents.size() != static_cast<std::size_t>(dim))
    throw config_error("evaluate: extents must give one value per axis");
  for (std::size_t n : extents)
    if (n < 2) throw config_error("evaluate: every grid extent must be >= 2");

  const std::size_t waves = field.wave_count();
  const std::size_t nx = extents[0];
  const std::size_t ny = extents[1];
  const std::size_t nz = dim == 3 ? extents[2] : 1;

  // Per-axis tables, indexed [wave*extent + cell]. The wave's phase offset is
  // folded into the last axis so it costs nothing in the combine step.
  std::vector<double> cx(waves * nx), sx(waves * nx);
  std::vector<double> cy, sy, cyp, syp, czp, szp;
  if (dim == 2) {
    cyp.resize(waves * ny);
    syp.resize(waves * ny);
  } else {
    cy.resize(waves * ny);
    sy.resize(waves * ny);
    czp.resize(waves * nz);
    szp.resize(waves * nz);
  }

  parallel_for(waves, threads, [&](std::size_t wbegin, std::size_t wend) {
    for (std::size_t w = wbegin; w < wend; ++w) {
      const auto& q = field.wavevectors[w];
      const double phase = field.phases[w];
      for (std::size_t i = 0; i < nx; ++i) {
        const double ang = q[0] * ((static_cast<double>(i) + 0.5) / static_cast<double>(nx));
        cx[w * nx + i] = std::cos(ang);
        sx[w * nx + i] = std::sin(ang);
      }
      if (dim == 2) {
        for (std::size_t j = 0; j < ny; ++j) {
          const double ang =
              q[1] * ((static_cast<double>(j) + 0.5) / static_cast<double>(ny)) + phase;
          cyp[w * ny + j] = std::cos(ang);
          syp[w * ny + j] = std::sin(ang);
        }
      } else {
        for (std::size_t j = 0; j < ny; ++j) {
          const double ang = q[1] * ((static_cast<double>(j) + 0.5) / static_cast<double>(ny));
          cy[w * ny + j] = std::cos(ang);
          sy[w * ny + j] = std::sin(ang);
        }
        for (std::size_t k = 0; k < nz; ++k) {
          const double ang =
              q[2] * ((static_cast<double>(k) + 0.5) / static_cast<double>(nz)) + phase;
          czp[w * nz + k] = std::cos(ang);
          szp[w * nz + k] = std::sin(ang);
        }
      }
    }
  });

  ScalarGrid out(std::vector<std::size_t>(extents.begin(), extents.end()));
  const double norm = 1.0 / std::sqrt(static_cast<double>(waves));
  double* values = out.values().data();

  parallel_for(ny * nz, threads, [&](std::size_t rbegin, std::size_t rend) {
    for (std::size_t row = rbegin; row < rend; ++row) {
      const std::size_t j = row % ny;
      const std::size_t k = row / ny;
      double* line = values + row * nx;
      for (std::size_t w = 0; w < waves; ++w) {
        double c_rest, s_rest;
        if (dim == 2) {
          c_rest = cyp[w * ny + j];
          s_rest = syp[w * ny + j];
        } else {
          const double cj = cy[w * ny + j], sj = sy[w * ny + j];
          const double ck = czp[w * nz + k], sk = szp[w * nz + k];
          c_rest = cj * ck - sj * sk;
          s_rest = sj * ck + cj * sk;
        }
        const double* cxi = cx.data() + w * nx;
        const double* sxi = sx.data() + w * nx;
        for (std::size_t i = 0; i < nx; ++i) line[i] += cxi[i] * c_rest - sxi[i] * s_rest;
      }
      for (std::size_t i = 0; i < nx; ++i) line[i] *= norm;
    }
  });

  return out;
}

}  // namespace grfgen
