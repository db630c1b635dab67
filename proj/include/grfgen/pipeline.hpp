#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "grfgen/analysis.hpp"
#include "grfgen/config.hpp"
#include "grfgen/errors.hpp"
#include "grfgen/io.hpp"
#include "grfgen/spectral.hpp"
#include "grfgen/structure.hpp"
#include "grfgen/topology.hpp"

namespace grfgen {

inline constexpr const char* version = "0.1.0";

enum class AnalysisKind { Correlation, Ssa, Tortuosity, Percolation, Trim };

inline const char* to_string(AnalysisKind a) {
  switch (a) {
    case AnalysisKind::Correlation: return "correlation";
    case AnalysisKind::Ssa: return "ssa";
    case AnalysisKind::Tortuosity: return "tortuosity";
    case AnalysisKind::Percolation: return "percolation";
    default: return "trim";
  }
}

inline AnalysisKind parse_analysis(std::string_view name) {
  if (name == "correlation") return AnalysisKind::Correlation;
  if (name == "ssa") return AnalysisKind::Ssa;
  if (name == "tortuosity") return AnalysisKind::Tortuosity;
  if (name == "percolation") return AnalysisKind::Percolation;
  if (name == "trim") return AnalysisKind::Trim;
  throw config_error("unknown analysis '" + std::string(name) +
                     "'; expected correlation, ssa, tortuosity, percolation or trim");
}

/// A pipeline stage failed. Carries the stage name and the process exit code
/// the CLI should report (3 generation, 4 analysis, 5 no percolation).
class pipeline_error : public std::runtime_error {
 public:
  pipeline_error(std::string stage, int exit_code, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what),
        stage_(std::move(stage)),
        exit_code_(exit_code) {}
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct PipelineOptions {
  std::filesystem::path out_dir = ".";
  GridFormat format = GridFormat::VtkLegacy;
  std::string basename = "structure";
  int threads = 0;           ///< <=0: GRFGEN_THREADS or hardware concurrency
  Phase phase = Phase::Solid;  ///< phase for topology analyses
  int axis = 0;                ///< axis for topology analyses
  bool write_structure = true;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

/// Everything one run produced: the config echo, measured results and the
/// files written. Re-running with the recorded config and seed regenerates
/// the grid outputs bit-exactly.
struct RunManifest {
  GeneratorConfig config;
  double measured_solid_fraction = 0.0;
  bool magnitude_bias_warning = false;
  std::vector<AnalysisKind> analyses;
  std::vector<std::string> outputs;
  std::vector<StageTiming> timings;
  std::optional<double> ssa;
  std::optional<double> tortuosity_value;
  std::optional<bool> percolates_result;
  std::optional<double> trimmed_solid_fraction;
  Phase phase = Phase::Solid;
  int axis = 0;
};

inline std::string manifest_to_text(const RunManifest& m) {
  std::ostringstream out;
  out.precision(17);
  out << "# grfgen run manifest\n";
  out << config_to_text(m.config);
  out << "# --- results (not config keys) ---\n";
  out << "tool_version=" << version << '\n';
  out << "measured_phi=" << m.measured_solid_fraction << '\n';
  if (m.magnitude_bias_warning) out << "magnitude_bias_warning=true\n";
  out << "analyses=";
  for (std::size_t i = 0; i < m.analyses.size(); ++i)
    out << (i ? "," : "") << to_string(m.analyses[i]);
  out << '\n';
  if (!m.analyses.empty()) {
    out << "phase=" << to_string(m.phase) << '\n';
    out << "axis=" << m.axis << '\n';
    out << "connectivity=" << Connectivity::description << '\n';
  }
  if (m.ssa) out << "ssa=" << *m.ssa << '\n';
  if (m.tortuosity_value) out << "tortuosity=" << *m.tortuosity_value << '\n';
  if (m.percolates_result) out << "percolates=" << (*m.percolates_result ? "true" : "false") << '\n';
  if (m.trimmed_solid_fraction) out << "trimmed_phi=" << *m.trimmed_solid_fraction << '\n';
  for (const auto& o : m.outputs) out << "output=" << o << '\n';
  for (const auto& t : m.timings) out << "timing_" << t.stage << '=' << t.seconds << '\n';
  return out.str();
}

namespace detail {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}
  template <typename Fn>
  auto run(const std::string& stage, int exit_code, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        record(stage, t0);
      } else {
        auto result = fn();
        record(stage, t0);
        return result;
      }
    } catch (const no_percolation_error& e) {
      throw pipeline_error(stage, 5, e.what());
    } catch (const pipeline_error&) {
      throw;
    } catch (const std::exception& e) {
      throw pipeline_error(stage, exit_code, e.what());
    }
  }

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    sink_.push_back({stage, std::chrono::duration<double>(dt).count()});
  }
  std::vector<StageTiming>& sink_;
};

/// Removes files registered with track() unless release() was called.
class OutputJanitor {
 public:
  ~OutputJanitor() {
    if (released_) return;
    for (const auto& p : paths_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }
  void track(const std::filesystem::path& p) { paths_.push_back(p); }
  void release() { released_ = true; }

 private:
  std::vector<std::filesystem::path> paths_;
  bool released_ = false;
};

}  // namespace detail

/// Run the full generate -> analyze -> topologize pipeline for one seed and
/// write the requested artifacts plus a manifest. On failure all partial
/// outputs of this run are removed and a pipeline_error is thrown.
inline RunManifest run_pipeline(const GeneratorConfig& config,
                                const std::vector<AnalysisKind>& analyses,
                                const PipelineOptions& options = {}) {
  config.validate();
  std::filesystem::create_directories(options.out_dir);

  RunManifest manifest;
  manifest.config = config;
  manifest.analyses = analyses;
  manifest.phase = options.phase;
  manifest.axis = options.axis;

  detail::StageClock clock(manifest.timings);
  detail::OutputJanitor janitor;

  const auto out_path = [&](const std::string& suffix, const char* ext) {
    return options.out_dir / (options.basename + suffix + ext);
  };
  const auto record_output = [&](const std::filesystem::path& p) {
    janitor.track(p);
    manifest.outputs.push_back(p.filename().string());
  };

  // generation
  MagnitudeStats stats;
  Microstructure structure = clock.run("generate", 3, [&] {
    const SpectralField field = build_spectral_field(config, &stats);
    const ScalarGrid grid = evaluate(field, config.grid, options.threads);
    return threshold(grid, config);
  });
  manifest.measured_solid_fraction = structure.measured_solid_fraction;
  manifest.magnitude_bias_warning = stats.bias_warning;

  if (options.write_structure) {
    clock.run("write_structure", 3, [&] {
      const auto path = out_path("", file_extension(options.format));
      record_output(path);
      write_grid(structure.occupancy, options.format, path);
    });
  }

  // analyses; the correlation map is shared between correlation and ssa
  std::optional<CorrelationMap> map;
  const auto correlation_map = [&]() -> const CorrelationMap& {
    if (!map) map = two_point_correlation(structure, options.threads);
    return *map;
  };

  for (const AnalysisKind kind : analyses) {
    switch (kind) {
      case AnalysisKind::Correlation:
        clock.run("correlation", 4, [&] {
          const CorrelationProfile g = angular_average(correlation_map());
          const double phi = structure.measured_solid_fraction;
          const auto g_path = out_path("_g", ".csv");
          record_output(g_path);
          write_profile_csv(g, g_path);
          const auto gn_path = out_path("_g_norm", ".csv");
          record_output(gn_path);
          write_profile_csv(normalize_profile(g, phi), gn_path);
          for (int axis = 0; axis < config.dimension; ++axis) {
            const CorrelationProfile line = directional_correlation(correlation_map(), axis);
            const auto path = out_path("_" + to_string(line.kind, false), ".csv");
            record_output(path);
            write_profile_csv(line, path);
          }
        });
        break;
      case AnalysisKind::Ssa:
        clock.run("ssa", 4, [&] {
          const CorrelationProfile g = angular_average(correlation_map());
          manifest.ssa = specific_surface_area(g, structure.measured_solid_fraction);
          if (*manifest.ssa <= 0.0)
            std::cerr << "grfgen: warning: non-positive SSA estimate; "
                         "structure is below the grid resolution\n";
        });
        break;
      case AnalysisKind::Percolation:
        clock.run("percolation", 4, [&] {
          manifest.percolates_result = percolates(structure, options.phase, options.axis);
        });
        break;
      case AnalysisKind::Tortuosity:
        clock.run("tortuosity", 4, [&] {
          const BurnResult result = burn(structure, options.phase, options.axis);
          manifest.tortuosity_value = tortuosity(result, structure.extents());
          if (options.format != GridFormat::CsvSparse) {
            // distance field in the structure's grid format (-1 = unreached)
            Grid<double> distances(structure.extents());
            for (std::size_t i = 0; i < distances.size(); ++i)
              distances[i] = static_cast<double>(result.distances[i]);
            const auto path = out_path("_burn", file_extension(options.format));
            record_output(path);
            write_grid(distances, options.format, path);
          }
        });
        break;
      case AnalysisKind::Trim:
        clock.run("trim", 4, [&] {
          const Microstructure trimmed =
              trim_to_percolating(structure, options.phase, options.axis);
          manifest.trimmed_solid_fraction = trimmed.measured_solid_fraction;
          const auto path = out_path("_trimmed", file_extension(options.format));
          record_output(path);
          write_grid(trimmed.occupancy, options.format, path);
        });
        break;
    }
  }

  clock.run("write_manifest", 4, [&] {
    const auto path = out_path("_manifest", ".txt");
    record_output(path);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "'");
    out << manifest_to_text(manifest);
  });

  janitor.release();
  return manifest;
}

}  // namespace grfgen
