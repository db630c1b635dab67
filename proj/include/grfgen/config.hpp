#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "grfgen/errors.hpp"

namespace grfgen {

enum class Cut { Single, Double };
enum class Distribution { Normal, Gamma };
enum class PreferredAxis { Horizontal, Vertical };

inline const char* to_string(Cut c) { return c == Cut::Single ? "single" : "double"; }
inline const char* to_string(Distribution d) {
  return d == Distribution::Normal ? "normal" : "gamma";
}
inline const char* to_string(PreferredAxis p) {
  return p == PreferredAxis::Horizontal ? "horizontal" : "vertical";
}

/// All user-facing generator parameters. The domain is the unit square/cube
/// (side length 1 by convention); mean_grains and heterogeneity are counts
/// per unit length.
struct GeneratorConfig {
  int dimension = 3;
  std::vector<std::size_t> grid;  ///< grid points per axis (size == dimension)
  std::size_t num_waves = 1000;
  double mean_grains = 0.0;
  double heterogeneity = 0.0;
  double anisotropy = 1.0;
  std::optional<PreferredAxis> preferred_axis;
  double solid_fraction = 0.0;
  Cut cut = Cut::Single;
  Distribution distribution = Distribution::Gamma;
  std::uint64_t seed = 0;

  static constexpr double domain_length = 1.0;

  /// Index of the axis along which grains elongate when anisotropy < 1.
  /// Vertical means the last axis, horizontal the first.
  int elongation_axis() const {
    return preferred_axis == PreferredAxis::Horizontal ? 0 : dimension - 1;
  }

  /// Throws config_error naming the offending key and the allowed range.
  void validate() const {
    if (dimension != 2 && dimension != 3)
      throw config_error("dim = " + std::to_string(dimension) + " invalid; dim must be 2 or 3");
    if (grid.size() != static_cast<std::size_t>(dimension))
      throw config_error("grid must give one extent per axis (" + std::to_string(dimension) +
                         " values); got " + std::to_string(grid.size()));
    for (std::size_t n : grid)
      if (n < 2)
        throw config_error("grid extent " + std::to_string(n) +
                           " invalid; every grid extent must be >= 2");
    if (num_waves < 1) throw config_error("waves must be >= 1");
    if (!(mean_grains > 0.0))
      throw config_error("mean_grains = " + std::to_string(mean_grains) +
                         " invalid; mean_grains must be > 0");
    if (!(heterogeneity > 0.0))
      throw config_error("heterogeneity = " + std::to_string(heterogeneity) +
                         " invalid; heterogeneity must be > 0");
    if (!(anisotropy > 0.0 && anisotropy <= 1.0))
      throw config_error("anisotropy = " + std::to_string(anisotropy) +
                         " invalid; anisotropy must be in (0,1]");
    if (anisotropy < 1.0 && !preferred_axis)
      throw config_error("preferred must be set (horizontal|vertical) when anisotropy < 1");
    if (!(solid_fraction > 0.0 && solid_fraction < 1.0))
      throw config_error("phi = " + std::to_string(solid_fraction) +
                         " invalid; phi must be in (0,1)");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_real(std::string_view key, std::string_view v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(std::string(v), &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw config_error(std::string(key) + " = '" + std::string(v) + "' is not a number");
  }
}

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw config_error(std::string(key) + " = '" + std::string(v) + "' is not a non-negative integer");
  return out;
}

inline std::vector<std::size_t> parse_extent_list(std::string_view v) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const std::size_t comma = v.find(',', start);
    const std::string_view item = trim(v.substr(start, comma == std::string_view::npos
                                                            ? std::string_view::npos
                                                            : comma - start));
    out.push_back(static_cast<std::size_t>(parse_unsigned("grid", item)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Apply one key=value assignment to a config. Grid values given as a single
/// extent are broadcast to all axes once the dimension is known (handled by
/// finalize_config). Unknown keys are rejected.
inline void apply_config_key(GeneratorConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_real;
  using detail::parse_unsigned;
  if (key == "dim") {
    cfg.dimension = static_cast<int>(parse_unsigned(key, value));
  } else if (key == "grid") {
    cfg.grid = detail::parse_extent_list(value);
  } else if (key == "waves") {
    cfg.num_waves = static_cast<std::size_t>(parse_unsigned(key, value));
  } else if (key == "mean_grains") {
    cfg.mean_grains = parse_real(key, value);
  } else if (key == "heterogeneity") {
    cfg.heterogeneity = parse_real(key, value);
  } else if (key == "anisotropy") {
    cfg.anisotropy = parse_real(key, value);
  } else if (key == "preferred") {
    if (value == "horizontal")
      cfg.preferred_axis = PreferredAxis::Horizontal;
    else if (value == "vertical")
      cfg.preferred_axis = PreferredAxis::Vertical;
    else
      throw config_error("preferred = '" + std::string(value) +
                         "' invalid; preferred must be horizontal or vertical");
  } else if (key == "phi") {
    cfg.solid_fraction = parse_real(key, value);
  } else if (key == "cut") {
    if (value == "single")
      cfg.cut = Cut::Single;
    else if (value == "double")
      cfg.cut = Cut::Double;
    else
      throw config_error("cut = '" + std::string(value) + "' invalid; cut must be single or double");
  } else if (key == "dist") {
    if (value == "normal")
      cfg.distribution = Distribution::Normal;
    else if (value == "gamma")
      cfg.distribution = Distribution::Gamma;
    else
      throw config_error("dist = '" + std::string(value) +
                         "' invalid; dist must be normal or gamma");
  } else if (key == "seed") {
    cfg.seed = parse_unsigned(key, value);
  } else {
    throw config_error("unknown configuration key '" + std::string(key) + "'");
  }
}

/// Broadcast a single grid extent over all axes and validate.
inline void finalize_config(GeneratorConfig& cfg) {
  if (cfg.grid.size() == 1 && cfg.dimension > 1)
    cfg.grid.assign(static_cast<std::size_t>(cfg.dimension), cfg.grid[0]);
  cfg.validate();
}

/// Parse flat key=value text ('#' comments, blank lines allowed) on top of
/// the given defaults. Validates the result.
inline GeneratorConfig parse_config_text(std::string_view text,
                                         GeneratorConfig defaults = GeneratorConfig{}) {
  GeneratorConfig cfg = std::move(defaults);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (!line.empty()) {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw config_error("line " + std::to_string(line_no) + ": expected key=value, got '" +
                           std::string(line) + "'");
      const std::string_view key = detail::trim(line.substr(0, eq));
      const std::string_view value = detail::trim(line.substr(eq + 1));
      apply_config_key(cfg, key, value);
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  finalize_config(cfg);
  return cfg;
}

inline GeneratorConfig parse_config_file(const std::filesystem::path& path,
                                         GeneratorConfig defaults = GeneratorConfig{}) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(defaults));
}

/// Config echo in the same key=value syntax the parser accepts.
inline std::string config_to_text(const GeneratorConfig& cfg) {
  std::ostringstream out;
  out.precision(17);  // round-trips every double exactly
  out << "dim=" << cfg.dimension << '\n';
  out << "grid=";
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) out << (i ? "," : "") << cfg.grid[i];
  out << '\n';
  out << "waves=" << cfg.num_waves << '\n';
  out << "mean_grains=" << cfg.mean_grains << '\n';
  out << "heterogeneity=" << cfg.heterogeneity << '\n';
  out << "anisotropy=" << cfg.anisotropy << '\n';
  if (cfg.preferred_axis) out << "preferred=" << to_string(*cfg.preferred_axis) << '\n';
  out << "phi=" << cfg.solid_fraction << '\n';
  out << "cut=" << to_string(cfg.cut) << '\n';
  out << "dist=" << to_string(cfg.distribution) << '\n';
  out << "seed=" << cfg.seed << '\n';
  return out.str();
}

}  // namespace grfgen
