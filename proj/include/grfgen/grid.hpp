#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace grfgen {

/// Dense field sampled on a regular 2D or 3D grid over the unit domain.
///
/// Values are stored x-fastest: index = i + nx*(j + ny*k). Cell samples sit
/// at cell centers, r_i = (i + 0.5)/n per axis, so no boundary sample is
/// duplicated under periodic lag arithmetic.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(std::vector<std::size_t> extents, T fill = T{})
      : extents_(std::move(extents)) {
    if (extents_.size() < 2 || extents_.size() > 3)
      throw std::invalid_argument("Grid: dimension must be 2 or 3");
    std::size_t total = 1;
    for (std::size_t n : extents_) {
      if (n == 0) throw std::invalid_argument("Grid: zero extent");
      total *= n;
    }
    values_.assign(total, fill);
  }

  int dimension() const { return static_cast<int>(extents_.size()); }
  const std::vector<std::size_t>& extents() const { return extents_; }
  std::size_t extent(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return values_.size(); }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k = 0) const {
    return i + extents_[0] * (j + (dimension() == 3 ? extents_[1] * k : 0));
  }

  T& operator[](std::size_t linear) { return values_[linear]; }
  const T& operator[](std::size_t linear) const { return values_[linear]; }

  T& operator()(std::size_t i, std::size_t j, std::size_t k = 0) {
    return values_[index(i, j, k)];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k = 0) const {
    return values_[index(i, j, k)];
  }

  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  /// Physical coordinate of a cell center along one axis (domain length 1).
  double cell_center(int axis, std::size_t i) const {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(extents_[static_cast<std::size_t>(axis)]);
  }

  /// Grid spacing along one axis.
  double spacing(int axis) const {
    return 1.0 / static_cast<double>(extents_[static_cast<std::size_t>(axis)]);
  }

  bool operator==(const Grid&) const = default;

 private:
  std::vector<std::size_t> extents_;
  std::vector<T> values_;
};

using ScalarGrid = Grid<double>;

}  // namespace grfgen
