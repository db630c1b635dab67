// grfgen command-line tool: generate two-phase microstructures from
// thresholded Gaussian random fields and analyze structures on disk.
//
// Exit codes: 0 success, 2 configuration error, 3 generation error,
// 4 analysis error, 5 requested percolation-dependent analysis found no
// percolating cluster.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "grfgen/grfgen.hpp"

namespace {

std::vector<grfgen::AnalysisKind> parse_analysis_list(const std::vector<std::string>& names) {
  std::vector<grfgen::AnalysisKind> out;
  for (const auto& entry : names) {
    std::size_t start = 0;
    while (start <= entry.size()) {
      const std::size_t comma = entry.find(',', start);
      const std::string item =
          entry.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!item.empty()) out.push_back(grfgen::parse_analysis(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

struct FlagValues {
  std::optional<int> dim;
  std::optional<std::string> grid;
  std::optional<std::uint64_t> waves;
  std::optional<double> mean_grains;
  std::optional<double> heterogeneity;
  std::optional<double> anisotropy;
  std::optional<std::string> preferred;
  std::optional<double> phi;
  std::optional<std::string> cut;
  std::optional<std::string> dist;
  std::optional<std::uint64_t> seed;
};

// flags override whatever the config file set; numeric values are assigned
// directly so no precision is lost in a string round trip
grfgen::GeneratorConfig merge_flags(grfgen::GeneratorConfig cfg, const FlagValues& f) {
  using grfgen::apply_config_key;
  if (f.dim) cfg.dimension = *f.dim;
  if (f.grid) apply_config_key(cfg, "grid", *f.grid);
  if (f.waves) cfg.num_waves = *f.waves;
  if (f.mean_grains) cfg.mean_grains = *f.mean_grains;
  if (f.heterogeneity) cfg.heterogeneity = *f.heterogeneity;
  if (f.anisotropy) cfg.anisotropy = *f.anisotropy;
  if (f.preferred) apply_config_key(cfg, "preferred", *f.preferred);
  if (f.phi) cfg.solid_fraction = *f.phi;
  if (f.cut) apply_config_key(cfg, "cut", *f.cut);
  if (f.dist) apply_config_key(cfg, "dist", *f.dist);
  if (f.seed) cfg.seed = *f.seed;
  grfgen::finalize_config(cfg);
  return cfg;
}

int run_generate(const grfgen::GeneratorConfig& base_config,
                 const std::vector<grfgen::AnalysisKind>& analyses,
                 grfgen::PipelineOptions options, std::uint64_t count) {
  const std::string basename = options.basename;
  for (std::uint64_t k = 0; k < count; ++k) {
    grfgen::GeneratorConfig cfg = base_config;
    cfg.seed = base_config.seed + k;
    if (count > 1) options.basename = basename + "_seed" + std::to_string(cfg.seed);
    const grfgen::RunManifest manifest = grfgen::run_pipeline(cfg, analyses, options);
    std::cout << options.basename << ": phi_hat = " << manifest.measured_solid_fraction;
    if (manifest.magnitude_bias_warning)
      std::cout << "  (warning: normal-draw rejection rate above 50%, mean biased upward)";
    if (manifest.ssa) std::cout << "  ssa = " << *manifest.ssa;
    if (manifest.tortuosity_value) std::cout << "  tau = " << *manifest.tortuosity_value;
    if (manifest.percolates_result)
      std::cout << "  percolates = " << (*manifest.percolates_result ? "true" : "false");
    std::cout << '\n';
  }
  return 0;
}

int run_analyze(const std::filesystem::path& input,
                const std::vector<grfgen::AnalysisKind>& analyses,
                const grfgen::PipelineOptions& options) {
  grfgen::RawGrid raw = [&] {
    try {
      return grfgen::read_raw(input);
    } catch (const std::exception& e) {
      throw grfgen::config_error(std::string("cannot read input grid: ") + e.what());
    }
  }();
  const auto* occupancy = std::get_if<grfgen::Grid<std::uint8_t>>(&raw);
  if (!occupancy) throw grfgen::config_error("analyze expects a u8 occupancy grid");

  grfgen::Microstructure ms;
  ms.occupancy = *occupancy;
  ms.measured_solid_fraction = grfgen::measured_solid_fraction(ms.occupancy);
  ms.target_solid_fraction = ms.measured_solid_fraction;

  std::filesystem::create_directories(options.out_dir);
  const auto out_path = [&](const std::string& suffix, const char* ext) {
    return options.out_dir / (options.basename + suffix + ext);
  };

  std::cout << "phi_hat = " << ms.measured_solid_fraction << '\n';
  std::optional<grfgen::CorrelationMap> map;
  const auto correlation_map = [&]() -> const grfgen::CorrelationMap& {
    if (!map) map = grfgen::two_point_correlation(ms, options.threads);
    return *map;
  };

  for (const grfgen::AnalysisKind kind : analyses) {
    switch (kind) {
      case grfgen::AnalysisKind::Correlation: {
        const grfgen::CorrelationProfile g = grfgen::angular_average(correlation_map());
        grfgen::write_profile_csv(g, out_path("_g", ".csv"));
        grfgen::write_profile_csv(grfgen::normalize_profile(g, ms.measured_solid_fraction),
                                  out_path("_g_norm", ".csv"));
        for (int axis = 0; axis < ms.dimension(); ++axis) {
          const auto line = grfgen::directional_correlation(correlation_map(), axis);
          grfgen::write_profile_csv(line, out_path("_" + to_string(line.kind, false), ".csv"));
        }
        std::cout << "correlation profiles written to " << options.out_dir.string() << '\n';
        break;
      }
      case grfgen::AnalysisKind::Ssa: {
        const grfgen::CorrelationProfile g = grfgen::angular_average(correlation_map());
        const double ssa = grfgen::specific_surface_area(g, ms.measured_solid_fraction);
        if (ssa <= 0.0)
          std::cerr << "grfgen: warning: non-positive SSA estimate; "
                       "structure is below the grid resolution\n";
        std::cout << "ssa = " << ssa << '\n';
        break;
      }
      case grfgen::AnalysisKind::Percolation:
        std::cout << "percolates = "
                  << (grfgen::percolates(ms, options.phase, options.axis) ? "true" : "false")
                  << '\n';
        break;
      case grfgen::AnalysisKind::Tortuosity: {
        const grfgen::BurnResult result = grfgen::burn(ms, options.phase, options.axis);
        std::cout << "tau = " << grfgen::tortuosity(result, ms.extents()) << '\n';
        break;
      }
      case grfgen::AnalysisKind::Trim: {
        const grfgen::Microstructure trimmed =
            grfgen::trim_to_percolating(ms, options.phase, options.axis);
        grfgen::write_raw(trimmed.occupancy, out_path("_trimmed", ".raw"));
        std::cout << "trimmed phi_hat = " << trimmed.measured_solid_fraction << '\n';
        break;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grfgen: two-phase microstructures from thresholded Gaussian random fields"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "generate a structure (or an ensemble)");
  std::string config_path;
  FlagValues flags;
  std::vector<std::string> analysis_names;
  std::string format_name = "vtk";
  std::string out_dir = ".";
  std::string basename = "structure";
  std::string phase_name = "solid";
  int axis = 0;
  std::uint64_t count = 1;

  gen->add_option("--config", config_path, "key=value config file; flags override it");
  gen->add_option("--dim", flags.dim, "dimension (2 or 3)");
  gen->add_option("--grid", flags.grid, "grid points per axis, e.g. 256 or 256,128");
  gen->add_option("--waves", flags.waves, "number of standing waves");
  gen->add_option("--mean-grains,--mean_grains", flags.mean_grains,
                  "mean grains per unit length");
  gen->add_option("--heterogeneity", flags.heterogeneity,
                  "standard deviation of grains per unit length");
  gen->add_option("--anisotropy", flags.anisotropy, "anisotropy in (0,1]; 1 = isotropic");
  gen->add_option("--preferred", flags.preferred, "elongation direction: horizontal|vertical");
  gen->add_option("--phi", flags.phi, "target solid fraction in (0,1)");
  gen->add_option("--cut", flags.cut, "single|double");
  gen->add_option("--dist", flags.dist, "magnitude distribution: normal|gamma");
  gen->add_option("--seed", flags.seed, "RNG seed");
  gen->add_option("--count", count, "ensemble size; seeds seed..seed+count-1");
  gen->add_option("--format", format_name, "vtk|raw|csv (long names accepted)");
  gen->add_option("--out-dir", out_dir, "output directory");
  gen->add_option("--basename", basename, "output file basename");
  gen->add_option("--analyze", analysis_names,
                  "comma-separated analyses: correlation,ssa,tortuosity,percolation,trim");
  gen->add_option("--phase", phase_name, "phase for topology analyses: solid|void");
  gen->add_option("--axis", axis, "axis for topology analyses");

  // ---- analyze ----
  auto* ana = app.add_subcommand("analyze", "analyze a structure from a raw_with_header file");
  std::string input_path;
  std::vector<std::string> ana_names;
  std::string ana_out_dir = ".";
  std::string ana_basename = "analysis";
  std::string ana_phase = "solid";
  int ana_axis = 0;
  ana->add_option("--in", input_path, "input grid (raw_with_header, u8)")->required();
  ana->add_option("--analyze,--analyses", ana_names, "analyses to run")->required();
  ana->add_option("--out-dir", ana_out_dir, "output directory");
  ana->add_option("--basename", ana_basename, "output file basename");
  ana->add_option("--phase", ana_phase, "solid|void");
  ana->add_option("--axis", ana_axis, "axis for topology analyses");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      grfgen::GeneratorConfig cfg;
      if (!config_path.empty()) {
        grfgen::GeneratorConfig defaults;
        cfg = grfgen::parse_config_file(config_path, defaults);
      }
      cfg = merge_flags(cfg, flags);

      grfgen::PipelineOptions options;
      options.format = grfgen::parse_grid_format(format_name);
      options.out_dir = out_dir;
      options.basename = basename;
      options.axis = axis;
      if (phase_name != "solid" && phase_name != "void")
        throw grfgen::config_error("phase must be solid or void");
      options.phase = phase_name == "solid" ? grfgen::Phase::Solid : grfgen::Phase::Void;
      if (count < 1) throw grfgen::config_error("count must be >= 1");

      return run_generate(cfg, parse_analysis_list(analysis_names), options, count);
    }

    grfgen::PipelineOptions options;
    options.out_dir = ana_out_dir;
    options.basename = ana_basename;
    options.axis = ana_axis;
    if (ana_phase != "solid" && ana_phase != "void")
      throw grfgen::config_error("phase must be solid or void");
    options.phase = ana_phase == "solid" ? grfgen::Phase::Solid : grfgen::Phase::Void;
    return run_analyze(input_path, parse_analysis_list(ana_names), options);
  } catch (const grfgen::config_error& e) {
    std::cerr << "grfgen: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const grfgen::pipeline_error& e) {
    std::cerr << "grfgen: " << e.what() << '\n';
    return e.exit_code();
  } catch (const grfgen::no_percolation_error& e) {
    std::cerr << "grfgen: " << e.what() << '\n';
    return 5;
  } catch (const grfgen::analysis_error& e) {
    std::cerr << "grfgen: analysis error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "grfgen: error: " << e.what() << '\n';
    return 1;
  }
}
