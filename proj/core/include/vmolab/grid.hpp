#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vmolab {

/// Uniform periodic grid on [0,1)^dim with n cells per axis. Samples sit at
/// cell centers (i + 1/2) h; flat indices are row-major, last axis fastest.
class GridShape {
 public:
  static constexpr int kMaxDim = 4;

  GridShape(int dim, int n);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double h() const noexcept { return 1.0 / n_; }
  std::size_t size() const noexcept { return size_; }
  double cell_volume() const noexcept;

  /// Multi-index of a flat index.
  std::array<int, kMaxDim> unflatten(std::size_t index) const noexcept;
  std::size_t flatten(const std::array<int, kMaxDim>& idx) const noexcept;
  /// Index of the neighbor `offset` cells along `axis`, wrapping periodically.
  std::size_t shifted(std::size_t index, int axis, int offset) const noexcept;
  /// Cell-center coordinate of `index` along `axis`.
  double coordinate(std::size_t index, int axis) const noexcept;
  std::array<double, kMaxDim> center(std::size_t index) const noexcept;

  bool operator==(const GridShape& other) const noexcept { return dim_ == other.dim_ && n_ == other.n_; }

 private:
  int dim_;
  int n_;
  std::size_t size_;
  std::array<std::size_t, kMaxDim> stride_{};
};

/// Periodic grid samples of a real function.
struct GridFunction {
  GridShape shape;
  std::vector<double> values;

  explicit GridFunction(GridShape s) : shape(s), values(s.size(), 0.0) {}
  GridFunction(GridShape s, std::vector<double> v);

  /// Samples fn at every cell center.
  static GridFunction sample(GridShape s, const std::function<double(std::span<const double>)>& fn);

  std::size_t size() const noexcept { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double c, const GridFunction& a);

}  // namespace vmolab
