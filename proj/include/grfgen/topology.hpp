#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grfgen/errors.hpp"
#include "grfgen/grid.hpp"
#include "grfgen/structure.hpp"

namespace grfgen {

enum class Phase : std::uint8_t { Void = 0, Solid = 1 };

inline const char* to_string(Phase p) { return p == Phase::Solid ? "solid" : "void"; }

/// Adjacency convention used by all topology operations: face neighbors only
/// (4 in 2D, 6 in 3D), non-periodic boundaries. Recorded in outputs so
/// results are comparable across tools.
struct Connectivity {
  static constexpr const char* description = "face-adjacency, non-periodic";
  static int neighbor_count(int dimension) { return 2 * dimension; }
};

/// Geodesic distance field produced by burning through one phase from the
/// axis-minimal face. Distance is counted in cell steps (seed cells are 0);
/// -1 marks cells the fire never reached (the "infinite" sentinel, shared
/// with the grid export convention).
struct BurnResult {
  Grid<std::int32_t> distances;
  Phase phase = Phase::Solid;
  int axis = 0;
  bool percolates = false;
  std::int32_t min_exit_distance = -1;  ///< -1 when not percolating
};

namespace detail {

/// Multi-source breadth-first burn seeded on one face. Level-synchronous
/// frontier sweep; distances of face-adjacent same-phase cells differ by at
/// most one by construction.
inline BurnResult burn_from_face(const Microstructure& ms, Phase phase, int axis, bool seed_max_face) {
  const int dim = ms.dimension();
  if (axis < 0 || axis >= dim) throw std::domain_error("burn: axis out of range");

  const auto& extents = ms.extents();
  const std::size_t nx = extents[0];
  const std::size_t ny = extents[1];
  const std::size_t nz = dim == 3 ? extents[2] : 1;
  const std::size_t n_axis = extents[static_cast<std::size_t>(axis)];
  const std::uint8_t want = static_cast<std::uint8_t>(phase);
  const auto& occ = ms.occupancy.values();

  BurnResult result;
  result.phase = phase;
  result.axis = axis;
  result.distances = Grid<std::int32_t>(extents, -1);
  auto& dist = result.distances.values();

  const std::size_t seed_coord = seed_max_face ? n_axis - 1 : 0;
  const std::size_t exit_coord = seed_max_face ? 0 : n_axis - 1;

  std::vector<std::size_t> frontier;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < nz; ++k)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i, ++idx) {
        const std::size_t c = axis == 0 ? i : (axis == 1 ? j : k);
        if (c == seed_coord && occ[idx] == want) {
          dist[idx] = 0;
          frontier.push_back(idx);
        }
      }

  const std::size_t plane = nx * ny;
  std::vector<std::size_t> next;
  std::int32_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (const std::size_t cell : frontier) {
      const std::size_t i = cell % nx;
      const std::size_t j = (cell / nx) % ny;
      const std::size_t k = cell / plane;
      const auto visit = [&](std::size_t neighbor) {
        if (occ[neighbor] == want && dist[neighbor] < 0) {
          dist[neighbor] = level;
          next.push_back(neighbor);
        }
      };
      if (i > 0) visit(cell - 1);
      if (i + 1 < nx) visit(cell + 1);
      if (j > 0) visit(cell - nx);
      if (j + 1 < ny) visit(cell + nx);
      if (dim == 3) {
        if (k > 0) visit(cell - plane);
        if (k + 1 < nz) visit(cell + plane);
      }
    }
    frontier.swap(next);
  }

  // exit scan: any burned phase cell on the opposite face
  std::int32_t best = -1;
  idx = 0;
  for (std::size_t k = 0; k < nz; ++k)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i, ++idx) {
        const std::size_t c = axis == 0 ? i : (axis == 1 ? j : k);
        if (c == exit_coord && dist[idx] >= 0 && (best < 0 || dist[idx] < best)) best = dist[idx];
      }
  result.min_exit_distance = best;
  result.percolates = best >= 0;
  return result;
}

}  // namespace detail

/// Burn through `phase` from the axis-minimal face.
inline BurnResult burn(const Microstructure& ms, Phase phase, int axis) {
  return detail::burn_from_face(ms, phase, axis, /*seed_max_face=*/false);
}

/// Shortest through-phase path length relative to the sample side, counted
/// in cells: tau = (min_exit_distance + 1) / extent. A straight spanning
/// column gives exactly 1 at any resolution.
inline double tortuosity(const BurnResult& result, const std::vector<std::size_t>& extents) {
  if (!result.percolates)
    throw no_percolation_error(std::string("tortuosity: no percolating path in ") +
                               to_string(result.phase) + " phase along axis " +
                               std::to_string(result.axis));
  return static_cast<double>(result.min_exit_distance + 1) /
         static_cast<double>(extents[static_cast<std::size_t>(result.axis)]);
}

inline bool percolates(const Microstructure& ms, Phase phase, int axis) {
  return burn(ms, phase, axis).percolates;
}

/// Remove material of `phase` that does not belong to any spanning cluster.
///
/// A cell lies in a spanning component exactly when the burn from the
/// axis-minimal face and the burn from the axis-maximal face both reach it.
/// All spanning components are kept (not just the one carrying the shortest
/// path); removed cells are reassigned to the other phase and the measured
/// fraction updated.
inline Microstructure trim_to_percolating(const Microstructure& ms, Phase phase, int axis) {
  const BurnResult from_min = burn(ms, phase, axis);
  if (!from_min.percolates)
    throw no_percolation_error(std::string("trim_to_percolating: no spanning cluster in ") +
                               to_string(phase) + " phase along axis " + std::to_string(axis));
  const BurnResult from_max = detail::burn_from_face(ms, phase, axis, /*seed_max_face=*/true);

  Microstructure trimmed = ms;
  auto& occ = trimmed.occupancy.values();
  const auto& d1 = from_min.distances.values();
  const auto& d2 = from_max.distances.values();
  const std::uint8_t keep = static_cast<std::uint8_t>(phase);
  const std::uint8_t other = keep ^ 1;
  for (std::size_t i = 0; i < occ.size(); ++i)
    if (occ[i] == keep && (d1[i] < 0 || d2[i] < 0)) occ[i] = other;
  trimmed.measured_solid_fraction = measured_solid_fraction(trimmed.occupancy);
  return trimmed;
}

}  // namespace grfgen
