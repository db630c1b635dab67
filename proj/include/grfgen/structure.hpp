#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "grfgen/config.hpp"
#include "grfgen/errors.hpp"
#include "grfgen/grid.hpp"
#include "grfgen/math.hpp"

namespace grfgen {

/// Binary occupancy grid: 1 = solid, 0 = void.
struct Microstructure {
  Grid<std::uint8_t> occupancy;
  double target_solid_fraction = 0.0;
  double measured_solid_fraction = 0.0;
  Cut cut = Cut::Single;
  std::optional<GeneratorConfig> provenance;  ///< absent for hand-built or imported grids

  const std::vector<std::size_t>& extents() const { return occupancy.extents(); }
  int dimension() const { return occupancy.dimension(); }
};

/// Exact solid-cell count over total cells.
inline double measured_solid_fraction(const Grid<std::uint8_t>& occupancy) {
  if (occupancy.size() == 0) throw std::invalid_argument("measured_solid_fraction: empty grid");
  std::size_t solid = 0;
  for (const std::uint8_t v : occupancy.values()) solid += v;
  return static_cast<double>(solid) / static_cast<double>(occupancy.size());
}

inline double measured_solid_fraction(const Microstructure& ms) {
  return measured_solid_fraction(ms.occupancy);
}

/// Single-cut threshold level c(phi) = erfinv(1 - 2*phi).
///
/// For the standard construction the field is N(0, 1/2) pointwise, so
/// P(field > c) = (1 - erf(c))/2 = phi exactly at this level.
inline double single_cut_level(double solid_fraction) {
  if (!(solid_fraction > 0.0 && solid_fraction < 1.0))
    throw std::domain_error("single_cut_level: phi must be in (0,1)");
  return erf_inverse(1.0 - 2.0 * solid_fraction);
}

/// Double-cut levels (c_l, c_u) with c_u = erfinv(phi) and c_l = -c_u;
/// for an N(0, 1/2) field, P(c_l < field < c_u) = phi.
inline std::pair<double, double> double_cut_levels(double solid_fraction) {
  if (!(solid_fraction > 0.0 && solid_fraction < 1.0))
    throw std::domain_error("double_cut_levels: phi must be in (0,1)");
  const double upper = erf_inverse(solid_fraction);
  return {-upper, upper};
}

/// Solid where the field exceeds the single-cut level (strict inequality;
/// ties sit on a measure-zero set for continuous fields).
inline Microstructure threshold_single(const ScalarGrid& grid, double solid_fraction,
                                       std::optional<GeneratorConfig> provenance = std::nullopt) {
  if (grid.size() == 0) throw std::invalid_argument("threshold_single: empty grid");
  const double level = single_cut_level(solid_fraction);

  Microstructure ms;
  ms.occupancy = Grid<std::uint8_t>(grid.extents());
  const auto& in = grid.values();
  auto& out = ms.occupancy.values();
  for (std::size_t idx = 0; idx < in.size(); ++idx) out[idx] = in[idx] > level ? 1 : 0;

  ms.target_solid_fraction = solid_fraction;
  ms.measured_solid_fraction = measured_solid_fraction(ms.occupancy);
  ms.cut = Cut::Single;
  ms.provenance = std::move(provenance);
  return ms;
}

/// Solid strictly inside the symmetric band (c_l, c_u).
inline Microstructure threshold_double(const ScalarGrid& grid, double solid_fraction,
                                       std::optional<GeneratorConfig> provenance = std::nullopt) {
  if (grid.size() == 0) throw std::invalid_argument("threshold_double: empty grid");
  const auto [lower, upper] = double_cut_levels(solid_fraction);

  Microstructure ms;
  ms.occupancy = Grid<std::uint8_t>(grid.extents());
  const auto& in = grid.values();
  auto& out = ms.occupancy.values();
  for (std::size_t idx = 0; idx < in.size(); ++idx)
    out[idx] = (in[idx] > lower && in[idx] < upper) ? 1 : 0;

  ms.target_solid_fraction = solid_fraction;
  ms.measured_solid_fraction = measured_solid_fraction(ms.occupancy);
  ms.cut = Cut::Double;
  ms.provenance = std::move(provenance);
  return ms;
}

/// Threshold with the cut recorded in the config.
inline Microstructure threshold(const ScalarGrid& grid, const GeneratorConfig& config) {
  return config.cut == Cut::Single
             ? threshold_single(grid, config.solid_fraction, config)
             : threshold_double(grid, config.solid_fraction, config);
}

}  // namespace grfgen
