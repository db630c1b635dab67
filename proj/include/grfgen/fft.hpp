#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "grfgen/parallel.hpp"

namespace grfgen {

/// Reusable 1D complex DFT plan for a fixed length.
///
/// Power-of-two lengths run an iterative decimation-in-time radix-2
/// transform. Every other length is handled by the Bluestein chirp-z
/// algorithm, which re-expresses the DFT as a circular convolution of
/// power-of-two length m >= 2n-1. Plans are immutable after construction
/// and safe to share across threads.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("Fft1d: zero length");
    pow2_ = std::has_single_bit(n);
    m_ = pow2_ ? n : std::bit_ceil(2 * n - 1);
    build_pow2_tables();
    if (!pow2_) build_bluestein_tables();
  }

  std::size_t size() const { return n_; }

  /// In-place unscaled forward DFT: X_k = sum_j x_j exp(-2*pi*i*j*k/n).
  void forward(std::complex<double>* data) const {
    if (n_ == 1) return;
    if (pow2_) {
      pow2_forward(data);
      return;
    }
    // Bluestein: j*k = (j^2 + k^2 - (k-j)^2)/2 turns the DFT into a chirp
    // modulation, a circular convolution with the conjugate chirp, and a
    // final chirp modulation.
    std::vector<std::complex<double>> a(m_, {0.0, 0.0});
    for (std::size_t j = 0; j < n_; ++j) a[j] = data[j] * chirp_[j];
    pow2_forward(a.data());
    for (std::size_t k = 0; k < m_; ++k) a[k] *= chirp_spectrum_[k];
    pow2_inverse(a.data());
    for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * chirp_[k];
  }

  /// In-place inverse DFT including the 1/n scale, so inverse(forward(x)) = x.
  void inverse(std::complex<double>* data) const {
    if (n_ == 1) return;
    for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]);
    forward(data);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) data[j] = std::conj(data[j]) * scale;
  }

 private:
  void build_pow2_tables() {
    bitrev_.resize(m_);
    bitrev_[0] = 0;
    const int shift = std::countr_zero(m_);
    for (std::size_t i = 1; i < m_; ++i)
      bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) << (shift - 1));
    twiddle_.resize(m_ / 2);
    for (std::size_t k = 0; k < m_ / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m_);
      twiddle_[k] = std::polar(1.0, angle);
    }
  }

  void build_bluestein_tables() {
    chirp_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      // reduce j^2 mod 2n before the angle: keeps the argument small
      const std::size_t jsq = (j * j) % (2 * n_);
      const double angle = -std::numbers::pi * static_cast<double>(jsq) / static_cast<double>(n_);
      chirp_[j] = std::polar(1.0, angle);
    }
    chirp_spectrum_.assign(m_, {0.0, 0.0});
    chirp_spectrum_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
      chirp_spectrum_[j] = std::conj(chirp_[j]);
      chirp_spectrum_[m_ - j] = std::conj(chirp_[j]);
    }
    pow2_forward(chirp_spectrum_.data());
  }

  void pow2_forward(std::complex<double>* data) const {
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t r = bitrev_[i];
      if (i < r) std::swap(data[i], data[r]);
    }
    for (std::size_t len = 2; len <= m_; len <<= 1) {
      const std::size_t half = len >> 1;
      const std::size_t step = m_ / len;
      for (std::size_t base = 0; base < m_; base += len) {
        for (std::size_t off = 0; off < half; ++off) {
          const std::complex<double> w = twiddle_[off * step];
          const std::complex<double> odd = data[base + off + half] * w;
          const std::complex<double> even = data[base + off];
          data[base + off] = even + odd;
          data[base + off + half] = even - odd;
        }
      }
    }
  }

  void pow2_inverse(std::complex<double>* data) const {
    for (std::size_t i = 0; i < m_; ++i) data[i] = std::conj(data[i]);
    pow2_forward(data);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t i = 0; i < m_; ++i) data[i] = std::conj(data[i]) * scale;
  }

  std::size_t n_;
  std::size_t m_;
  bool pow2_ = false;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddle_;
  std::vector<std::complex<double>> chirp_;
  std::vector<std::complex<double>> chirp_spectrum_;
};

/// In-place multi-dimensional DFT over an x-fastest array, one axis at a
/// time. Lines along each axis are independent, so they are distributed
/// over workers; the result does not depend on the worker count.
inline void fft_nd(std::vector<std::complex<double>>& data,
                   const std::vector<std::size_t>& extents, bool inverse, int threads = 0) {
  std::size_t total = 1;
  for (std::size_t n : extents) total *= n;
  if (data.size() != total) throw std::invalid_argument("fft_nd: data/extent mismatch");

  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < extents.size(); ++axis) {
    const std::size_t n = extents[axis];
    if (n > 1) {
      const Fft1d plan(n);
      const std::size_t lines = total / n;
      const std::size_t axis_stride = stride;
      parallel_for(lines, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::complex<double>> line(n);
        for (std::size_t lin = begin; lin < end; ++lin) {
          const std::size_t inner = lin % axis_stride;
          const std::size_t outer = lin / axis_stride;
          const std::size_t base = outer * axis_stride * n + inner;
          if (axis_stride == 1) {
            if (inverse)
              plan.inverse(data.data() + base);
            else
              plan.forward(data.data() + base);
          } else {
            for (std::size_t t = 0; t < n; ++t) line[t] = data[base + t * axis_stride];
            if (inverse)
              plan.inverse(line.data());
            else
              plan.forward(line.data());
            for (std::size_t t = 0; t < n; ++t) data[base + t * axis_stride] = line[t];
          }
        }
      });
    }
    stride *= n;
  }
}

}  // namespace grfgen
