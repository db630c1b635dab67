#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "grfgen/analysis.hpp"
#include "grfgen/errors.hpp"
#include "grfgen/grid.hpp"
#include "grfgen/structure.hpp"

namespace grfgen {

enum class GridFormat { VtkLegacy, RawWithHeader, CsvSparse };

inline GridFormat parse_grid_format(std::string_view name) {
  if (name == "vtk_legacy_structured_points" || name == "vtk") return GridFormat::VtkLegacy;
  if (name == "raw_with_header" || name == "raw") return GridFormat::RawWithHeader;
  if (name == "csv_sparse" || name == "csv") return GridFormat::CsvSparse;
  throw config_error("unknown grid format '" + std::string(name) +
                     "'; expected vtk_legacy_structured_points, raw_with_header or csv_sparse");
}

inline const char* to_string(GridFormat f) {
  switch (f) {
    case GridFormat::VtkLegacy: return "vtk_legacy_structured_points";
    case GridFormat::RawWithHeader: return "raw_with_header";
    default: return "csv_sparse";
  }
}

inline const char* file_extension(GridFormat f) {
  switch (f) {
    case GridFormat::VtkLegacy: return ".vtk";
    case GridFormat::RawWithHeader: return ".raw";
    default: return ".csv";
  }
}

namespace detail {

inline void open_output(std::ofstream& out, const std::filesystem::path& path,
                        std::ios::openmode mode = std::ios::out) {
  out.open(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
}

template <typename T>
void write_vtk_impl(const Grid<T>& grid, const std::filesystem::path& path,
                    const std::string& scalar_name, const char* vtk_type) {
  const auto& e = grid.extents();
  const std::size_t nx = e[0], ny = e[1], nz = grid.dimension() == 3 ? e[2] : 1;

  std::ofstream out;
  open_output(out, path);
  out << "# vtk DataFile Version 3.0\n";
  out << "grfgen grid\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << nx << ' ' << ny << ' ' << nz << '\n';
  out << "ORIGIN 0 0 0\n";
  out.precision(17);
  out << "SPACING " << 1.0 / static_cast<double>(nx) << ' ' << 1.0 / static_cast<double>(ny)
      << ' ' << (grid.dimension() == 3 ? 1.0 / static_cast<double>(nz) : 1.0) << '\n';
  out << "POINT_DATA " << grid.size() << '\n';
  out << "SCALARS " << scalar_name << ' ' << vtk_type << " 1\n";
  out << "LOOKUP_TABLE default\n";

  // values in x-fastest order, one x-row per line
  const auto& v = grid.values();
  std::size_t idx = 0;
  for (std::size_t row = 0; row < ny * nz; ++row) {
    for (std::size_t i = 0; i < nx; ++i, ++idx) {
      if (i) out << ' ';
      if constexpr (std::is_same_v<T, std::uint8_t>)
        out << static_cast<int>(v[idx]);
      else
        out << v[idx];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline void write_le_doubles(std::ofstream& out, const std::vector<double>& values) {
  static_assert(sizeof(double) == 8);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
  } else {
    for (const double d : values) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, 8);
      char buf[8];
      for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
      out.write(buf, 8);
    }
  }
}

}  // namespace detail

/// Legacy-VTK ASCII structured-points writer; loads in standard scientific
/// viewers. 2D grids are written as a one-slice 3D dataset.
inline void write_vtk(const Grid<std::uint8_t>& grid, const std::filesystem::path& path,
                      const std::string& scalar_name = "occupancy") {
  detail::write_vtk_impl(grid, path, scalar_name, "int");
}
inline void write_vtk(const Grid<double>& grid, const std::filesystem::path& path,
                      const std::string& scalar_name = "value") {
  detail::write_vtk_impl(grid, path, scalar_name, "double");
}
inline void write_vtk(const Grid<std::int32_t>& grid, const std::filesystem::path& path,
                      const std::string& scalar_name = "distance") {
  detail::write_vtk_impl(grid, path, scalar_name, "int");
}

/// Raw format: one textual header line
///   dims=<nx,ny[,nz]> type=<u8|f64> order=x-fastest
/// followed by the little-endian binary payload. Lossless round trip.
inline void write_raw(const Grid<std::uint8_t>& grid, const std::filesystem::path& path) {
  std::ofstream out;
  detail::open_output(out, path, std::ios::out | std::ios::binary);
  out << "dims=";
  const auto& e = grid.extents();
  for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
  out << " type=u8 order=x-fastest\n";
  out.write(reinterpret_cast<const char*>(grid.values().data()),
            static_cast<std::streamsize>(grid.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline void write_raw(const Grid<double>& grid, const std::filesystem::path& path) {
  std::ofstream out;
  detail::open_output(out, path, std::ios::out | std::ios::binary);
  out << "dims=";
  const auto& e = grid.extents();
  for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
  out << " type=f64 order=x-fastest\n";
  detail::write_le_doubles(out, grid.values());
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

using RawGrid = std::variant<Grid<std::uint8_t>, Grid<double>>;

/// Reader for the raw_with_header format.
inline RawGrid read_raw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string header;
  std::getline(in, header);

  std::vector<std::size_t> extents;
  std::string type;
  std::istringstream hs(header);
  std::string token;
  bool order_ok = false;
  while (hs >> token) {
    if (token.rfind("dims=", 0) == 0) {
      std::istringstream ds(token.substr(5));
      std::string item;
      while (std::getline(ds, item, ',')) extents.push_back(std::stoull(item));
    } else if (token.rfind("type=", 0) == 0) {
      type = token.substr(5);
    } else if (token == "order=x-fastest") {
      order_ok = true;
    }
  }
  if (extents.size() < 2 || extents.size() > 3 || !order_ok || (type != "u8" && type != "f64"))
    throw std::runtime_error("malformed raw grid header in '" + path.string() + "'");

  std::size_t total = 1;
  for (std::size_t n : extents) total *= n;

  if (type == "u8") {
    Grid<std::uint8_t> grid(extents);
    in.read(reinterpret_cast<char*>(grid.values().data()), static_cast<std::streamsize>(total));
    if (in.gcount() != static_cast<std::streamsize>(total))
      throw std::runtime_error("truncated payload in '" + path.string() + "'");
    return grid;
  }
  Grid<double> grid(extents);
  in.read(reinterpret_cast<char*>(grid.values().data()),
          static_cast<std::streamsize>(total * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(total * sizeof(double)))
    throw std::runtime_error("truncated payload in '" + path.string() + "'");
  if constexpr (std::endian::native != std::endian::little) {
    for (double& d : grid.values()) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, 8);
      std::uint64_t swapped = 0;
      for (int b = 0; b < 8; ++b) swapped |= ((bits >> (8 * b)) & 0xff) << (8 * (7 - b));
      std::memcpy(&d, &swapped, 8);
    }
  }
  return grid;
}

/// Sparse CSV: one `i,j[,k]` row per solid cell, x-fastest order, no header.
inline void write_csv_sparse(const Grid<std::uint8_t>& grid, const std::filesystem::path& path) {
  std::ofstream out;
  detail::open_output(out, path);
  const auto& e = grid.extents();
  const std::size_t nx = e[0], ny = e[1], nz = grid.dimension() == 3 ? e[2] : 1;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < nz; ++k)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i, ++idx)
        if (grid.values()[idx]) {
          out << i << ',' << j;
          if (grid.dimension() == 3) out << ',' << k;
          out << '\n';
        }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

/// Dispatch on format for occupancy grids.
inline void write_grid(const Grid<std::uint8_t>& grid, GridFormat format,
                       const std::filesystem::path& path) {
  switch (format) {
    case GridFormat::VtkLegacy: write_vtk(grid, path); break;
    case GridFormat::RawWithHeader: write_raw(grid, path); break;
    case GridFormat::CsvSparse: write_csv_sparse(grid, path); break;
  }
}

/// Scalar grids have no sparse representation; csv_sparse is a format/type
/// mismatch for them.
inline void write_grid(const Grid<double>& grid, GridFormat format,
                       const std::filesystem::path& path) {
  switch (format) {
    case GridFormat::VtkLegacy: write_vtk(grid, path); break;
    case GridFormat::RawWithHeader: write_raw(grid, path); break;
    case GridFormat::CsvSparse:
      throw config_error("csv_sparse only applies to binary occupancy grids");
  }
}

/// Correlation profile CSV with header `lag,value,count`.
inline void write_profile_csv(const CorrelationProfile& profile,
                              const std::filesystem::path& path) {
  std::ofstream out;
  detail::open_output(out, path);
  out.precision(17);
  out << "lag,value,count\n";
  for (std::size_t i = 0; i < profile.lags.size(); ++i)
    out << profile.lags[i] << ',' << profile.values[i] << ',' << profile.counts[i] << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace grfgen
