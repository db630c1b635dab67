#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "grfgen/analysis.hpp"
#include "grfgen/random.hpp"
#include "grfgen/spectral.hpp"

using grfgen::CorrelationMap;
using grfgen::CorrelationProfile;
using grfgen::Grid;
using grfgen::Microstructure;

namespace {

Microstructure from_occupancy(Grid<std::uint8_t> occ) {
  Microstructure ms;
  ms.occupancy = std::move(occ);
  ms.measured_solid_fraction = grfgen::measured_solid_fraction(ms.occupancy);
  ms.target_solid_fraction = ms.measured_solid_fraction;
  return ms;
}

Microstructure random_structure(const std::vector<std::size_t>& extents, double p,
                                std::uint64_t seed) {
  grfgen::Rng rng(seed);
  Grid<std::uint8_t> occ(extents);
  for (auto& v : occ.values()) v = rng.uniform() < p ? 1 : 0;
  return from_occupancy(std::move(occ));
}

// Direct O(V^2) circular correlation: the independent oracle for the
// Wiener-Khinchin implementation.
Grid<double> brute_force_correlation(const Microstructure& ms) {
  const auto& e = ms.extents();
  const std::size_t nx = e[0], ny = e[1], nz = ms.dimension() == 3 ? e[2] : 1;
  const auto& occ = ms.occupancy;
  Grid<double> out(e, 0.0);
  for (std::size_t lk = 0; lk < nz; ++lk)
    for (std::size_t lj = 0; lj < ny; ++lj)
      for (std::size_t li = 0; li < nx; ++li) {
        std::size_t sum = 0;
        for (std::size_t k = 0; k < nz; ++k)
          for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i)
              sum += static_cast<std::size_t>(occ(i, j, k)) *
                     occ((i + li) % nx, (j + lj) % ny, (k + lk) % nz);
        out(li, lj, lk) = static_cast<double>(sum) / static_cast<double>(out.size());
      }
  return out;
}

}  // namespace

TEST_CASE("all-solid grid correlates to one everywhere") {
  const auto ms = from_occupancy(Grid<std::uint8_t>({8, 8}, 1));
  const CorrelationMap map = grfgen::two_point_correlation(ms);
  for (const double v : map.values.values()) REQUIRE(v == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("a single solid cell gives a delta correlation") {
  Grid<std::uint8_t> occ({6, 6}, 0);
  occ(2, 3) = 1;
  const CorrelationMap map = grfgen::two_point_correlation(from_occupancy(std::move(occ)));
  CHECK(map.values(0, 0) == Catch::Approx(1.0 / 36.0).margin(1e-12));
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t i = 0; i < 6; ++i)
      if (i || j) REQUIRE(std::abs(map.values(i, j)) < 1e-12);
}

TEST_CASE("FFT correlation matches the brute-force oracle") {
  for (const auto& [extents, seed] : std::vector<std::pair<std::vector<std::size_t>, std::uint64_t>>{
           {{16, 16}, 1}, {{7, 5}, 2}, {{8, 8, 8}, 3}, {{5, 6, 7}, 4}, {{16, 4, 4}, 5}}) {
    const Microstructure ms = random_structure(extents, 0.4, seed);
    const CorrelationMap map = grfgen::two_point_correlation(ms);
    const Grid<double> expected = brute_force_correlation(ms);
    double worst = 0.0;
    for (std::size_t i = 0; i < map.values.size(); ++i)
      worst = std::max(worst, std::abs(map.values[i] - expected[i]));
    CAPTURE(extents, seed);
    REQUIRE(worst < 1e-9);
  }
}

TEST_CASE("correlation map symmetry and bound") {
  const Microstructure ms = random_structure({12, 10}, 0.5, 9);
  const CorrelationMap map = grfgen::two_point_correlation(ms);
  const auto& e = ms.extents();
  CHECK(map.values(0, 0) == Catch::Approx(ms.measured_solid_fraction).margin(1e-12));
  for (std::size_t j = 0; j < e[1]; ++j)
    for (std::size_t i = 0; i < e[0]; ++i) {
      const std::size_t ni = i ? e[0] - i : 0;  // circular negation
      const std::size_t nj = j ? e[1] - j : 0;
      REQUIRE(std::abs(map.values(i, j) - map.values(ni, nj)) < 1e-9);
      REQUIRE(map.values(i, j) <= map.values(0, 0) + 1e-9);
    }
}

TEST_CASE("angular average of the all-solid grid is one in every bin") {
  const auto ms = from_occupancy(Grid<std::uint8_t>({16, 16}, 1));
  const CorrelationProfile g = grfgen::angular_average(grfgen::two_point_correlation(ms));
  for (const double v : g.values) REQUIRE(v == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(g.lags.front() == 0.0);
  REQUIRE(g.counts.front() == 1);  // the r=0 bin holds only the zero lag
  for (std::size_t i = 1; i < g.lags.size(); ++i) REQUIRE(g.lags[i] > g.lags[i - 1]);
  for (const std::size_t c : g.counts) REQUIRE(c >= 1);
  // profiles are reported out to lag 1/2
  REQUIRE(g.lags.back() <= 0.5 + 1e-12);
}

TEST_CASE("zero-lag identities") {
  const Microstructure ms = random_structure({20, 20}, 0.35, 11);
  const CorrelationProfile g = grfgen::angular_average(grfgen::two_point_correlation(ms));
  REQUIRE(g.values.front() ==
          Catch::Approx(ms.measured_solid_fraction).margin(1e-9));
  const CorrelationProfile gn = grfgen::normalize_profile(g, ms.measured_solid_fraction);
  REQUIRE(gn.values.front() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("normalization maps the asymptote to zero") {
  CorrelationProfile g;
  g.lags = {0.0, 0.1};
  g.values = {0.35, 0.35 * 0.35};
  g.counts = {1, 4};
  const CorrelationProfile gn = grfgen::normalize_profile(g, 0.35);
  CHECK(gn.values[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(gn.values[1] == Catch::Approx(0.0).margin(1e-12));
  CHECK(gn.normalized);
  CHECK_THROWS_AS(grfgen::normalize_profile(g, 0.0), grfgen::analysis_error);
  CHECK_THROWS_AS(grfgen::normalize_profile(g, 1.0), grfgen::analysis_error);
}

TEST_CASE("directional profiles read the map line through the origin") {
  const Microstructure ms = random_structure({12, 8}, 0.5, 13);
  const CorrelationMap map = grfgen::two_point_correlation(ms);
  const CorrelationProfile x = grfgen::directional_correlation(map, 0);
  REQUIRE(x.lags.size() == 7);  // lags 0..6 of 12
  for (std::size_t l = 0; l < x.lags.size(); ++l) {
    CHECK(x.lags[l] == Catch::Approx(static_cast<double>(l) / 12.0));
    CHECK(x.values[l] == map.values(l, 0));
    CHECK(x.counts[l] == 1);
  }
  const CorrelationProfile y = grfgen::directional_correlation(map, 1);
  REQUIRE(y.lags.size() == 5);  // lags 0..4 of 8
  CHECK(y.values[2] == map.values(0, 2));
  CHECK_THROWS_AS(grfgen::directional_correlation(map, 2), std::domain_error);
  CHECK_THROWS_AS(grfgen::directional_correlation(map, -1), std::domain_error);
}

TEST_CASE("all-solid structure has zero specific surface area") {
  const auto ms = from_occupancy(Grid<std::uint8_t>({16, 16}, 1));
  const CorrelationProfile g = grfgen::angular_average(grfgen::two_point_correlation(ms));
  CHECK(grfgen::specific_surface_area(g, ms.measured_solid_fraction) ==
        Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("specific surface area recovers a synthetic slope") {
  // g(r) = phi - s/4 * r with phi = 0.5, s = 2.0 => SSA = s/phi = 4
  CorrelationProfile g;
  for (int i = 0; i < 6; ++i) {
    g.lags.push_back(0.01 * i);
    g.values.push_back(0.5 - 0.5 * 0.01 * i);
    g.counts.push_back(1);
  }
  CHECK(grfgen::specific_surface_area(g, 0.5) == Catch::Approx(4.0).margin(1e-12));
}

TEST_CASE("specific surface area input checks") {
  CorrelationProfile short_profile;
  short_profile.lags = {0.0, 0.1, 0.2};
  short_profile.values = {0.5, 0.4, 0.3};
  short_profile.counts = {1, 1, 1};
  CHECK_THROWS_AS(grfgen::specific_surface_area(short_profile, 0.5), grfgen::analysis_error);

  CorrelationProfile g;
  for (int i = 0; i < 6; ++i) {
    g.lags.push_back(0.01 * i);
    g.values.push_back(0.5 - 0.005 * i);
    g.counts.push_back(1);
  }
  CHECK_THROWS_AS(grfgen::specific_surface_area(g, 0.0), grfgen::analysis_error);
  const CorrelationProfile gn = grfgen::normalize_profile(g, 0.5);
  CHECK_THROWS_AS(grfgen::specific_surface_area(gn, 0.5), grfgen::analysis_error);
}

namespace {

Microstructure generated(const grfgen::GeneratorConfig& cfg) {
  return grfgen::threshold(
      grfgen::evaluate(grfgen::build_spectral_field(cfg), cfg.grid), cfg);
}

grfgen::GeneratorConfig isotropic_2d(std::uint64_t seed, std::size_t n = 256) {
  grfgen::GeneratorConfig cfg;
  cfg.dimension = 2;
  cfg.grid = {n, n};
  cfg.mean_grains = 13.0;
  cfg.heterogeneity = 1.8;
  cfg.solid_fraction = 0.7;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("angular average decays from phi toward phi squared") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Microstructure ms = generated(isotropic_2d(seed));
    const CorrelationProfile g = grfgen::angular_average(grfgen::two_point_correlation(ms));
    const double phi = ms.measured_solid_fraction;
    REQUIRE(g.values.front() == Catch::Approx(phi).margin(1e-9));
    // no-correlation asymptote at a quarter of the domain
    std::size_t quarter = 0;
    for (std::size_t i = 0; i < g.lags.size(); ++i)
      if (std::abs(g.lags[i] - 0.25) < std::abs(g.lags[quarter] - 0.25)) quarter = i;
    CAPTURE(seed);
    REQUIRE(std::abs(g.values[quarter] - phi * phi) <= 0.02);
  }
}

TEST_CASE("normalized angular average decays monotonically over half a grain") {
  // ensemble mean over the anisotropic sample configuration
  const std::size_t half_grain_bins = 256 / 26;  // lag <= mean wavelength / 2
  std::vector<double> mean(half_grain_bins + 1, 0.0);
  constexpr int seeds = 5;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    grfgen::GeneratorConfig cfg = isotropic_2d(seed);
    cfg.anisotropy = 0.6;
    cfg.preferred_axis = grfgen::PreferredAxis::Vertical;
    const Microstructure ms = generated(cfg);
    const auto g = grfgen::angular_average(grfgen::two_point_correlation(ms));
    const auto gn = grfgen::normalize_profile(g, ms.measured_solid_fraction);
    for (std::size_t b = 0; b <= half_grain_bins; ++b) mean[b] += gn.values[b] / seeds;
  }
  for (std::size_t b = 1; b <= half_grain_bins; ++b) {
    CAPTURE(b);
    REQUIRE(mean[b] < mean[b - 1]);
  }
  // ensemble-averaged normalized correlation stays within [-0.3, 1]
  for (const double v : mean) {
    REQUIRE(v <= 1.0 + 1e-9);
    REQUIRE(v >= -0.3);
  }
}

TEST_CASE("isotropic directional profiles agree within the ensemble spread") {
  constexpr int seeds = 10;
  constexpr std::size_t n = 128;
  std::vector<std::vector<double>> diffs;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const Microstructure ms = generated(isotropic_2d(seed, n));
    const CorrelationMap map = grfgen::two_point_correlation(ms);
    const auto gx = grfgen::directional_correlation(map, 0);
    const auto gy = grfgen::directional_correlation(map, 1);
    std::vector<double> d(gx.values.size());
    for (std::size_t l = 0; l < d.size(); ++l) d[l] = gx.values[l] - gy.values[l];
    diffs.push_back(std::move(d));
  }
  for (std::size_t l = 1; l < diffs[0].size(); ++l) {
    double mean = 0.0;
    for (const auto& d : diffs) mean += d[l];
    mean /= seeds;
    double var = 0.0;
    for (const auto& d : diffs) var += (d[l] - mean) * (d[l] - mean);
    const double spread = std::sqrt(var / (seeds - 1));
    CAPTURE(l);
    REQUIRE(std::abs(mean) <= 2.0 * spread + 1e-12);
  }
}

TEST_CASE("anisotropy lengthens the correlation along the preferred axis") {
  // heterogeneous size distribution: dominance holds through a full mean
  // grain size (the homogeneous sample crosses just short of it)
  constexpr int seeds = 5;
  const std::size_t max_lag = 256 / 13;
  std::vector<double> mean_diff(max_lag + 1, 0.0);
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    grfgen::GeneratorConfig cfg = isotropic_2d(seed);
    cfg.heterogeneity = 6.0;
    cfg.anisotropy = 0.6;
    cfg.preferred_axis = grfgen::PreferredAxis::Vertical;
    const Microstructure ms = generated(cfg);
    const CorrelationMap map = grfgen::two_point_correlation(ms);
    const double phi = ms.measured_solid_fraction;
    const auto gx = grfgen::normalize_profile(grfgen::directional_correlation(map, 0), phi);
    const auto gy = grfgen::normalize_profile(grfgen::directional_correlation(map, 1), phi);
    for (std::size_t l = 1; l <= max_lag; ++l)
      mean_diff[l] += (gy.values[l] - gx.values[l]) / seeds;
  }
  for (std::size_t l = 1; l <= max_lag; ++l) {
    CAPTURE(l);
    REQUIRE(mean_diff[l] > 0.0);
  }
}

TEST_CASE("generated structure satisfies the zero-lag identity end to end") {
  grfgen::GeneratorConfig cfg;
  cfg.dimension = 2;
  cfg.grid = {64, 64};
  cfg.mean_grains = 13.0;
  cfg.heterogeneity = 1.8;
  cfg.solid_fraction = 0.7;
  cfg.seed = 4;
  const auto field = grfgen::build_spectral_field(cfg);
  const auto ms = grfgen::threshold(grfgen::evaluate(field, cfg.grid), cfg);
  const auto g = grfgen::angular_average(grfgen::two_point_correlation(ms));
  CHECK(g.values.front() == Catch::Approx(ms.measured_solid_fraction).margin(1e-9));
}
