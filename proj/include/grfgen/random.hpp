#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace grfgen {

/// Seeded random source with explicit distribution transforms.
///
/// The transforms are written out (rather than taken from <random>'s
/// distribution templates, whose algorithms are implementation-defined) so
/// that a given seed produces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() { return 1.0 - uniform(); }

  /// Box-Muller transform, cosine branch. Consumes exactly two uniforms
  /// per call; no cached spare, which keeps the draw sequence easy to reason
  /// about when transforms are interleaved.
  double normal(double mean, double sd) {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    return mean + sd * r * std::cos(theta);
  }

  /// Gamma(shape, scale) via Marsaglia & Tsang (2000), "A simple method for
  /// generating gamma variables", ACM TOMS 26(3). Shapes below 1 use the
  /// boost x *= U^(1/shape) from the same paper.
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double u = uniform_pos();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal(0.0, 1.0);
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_pos();
      if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v * scale;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace grfgen
