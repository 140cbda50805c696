#include "vmolab/grid.hpp"

#include <cmath>
#include <string>

#include "vmolab/error.hpp"

namespace vmolab {

GridShape::GridShape(int dim, int n) : dim_(dim), n_(n) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("grid dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  if (n < 1) throw InvalidArgument("grid resolution must be positive");
  size_ = 1;
  for (int k = dim - 1; k >= 0; --k) {
    stride_[static_cast<std::size_t>(k)] = size_;
    size_ *= static_cast<std::size_t>(n);
  }
}

double GridShape::cell_volume() const noexcept { return std::pow(h(), dim_); }

std::array<int, GridShape::kMaxDim> GridShape::unflatten(std::size_t index) const noexcept {
  std::array<int, kMaxDim> idx{};
  for (int k = 0; k < dim_; ++k) {
    const auto s = stride_[static_cast<std::size_t>(k)];
    idx[static_cast<std::size_t>(k)] = static_cast<int>(index / s);
    index %= s;
  }
  return idx;
}

std::size_t GridShape::flatten(const std::array<int, kMaxDim>& idx) const noexcept {
  std::size_t index = 0;
  for (int k = 0; k < dim_; ++k) {
    index += static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]) * stride_[static_cast<std::size_t>(k)];
  }
  return index;
}

std::size_t GridShape::shifted(std::size_t index, int axis, int offset) const noexcept {
  const auto s = stride_[static_cast<std::size_t>(axis)];
  const int i = static_cast<int>((index / s) % static_cast<std::size_t>(n_));
  int j = (i + offset) % n_;
  if (j < 0) j += n_;
  return index + (static_cast<std::size_t>(j) - static_cast<std::size_t>(i)) * s;
}

double GridShape::coordinate(std::size_t index, int axis) const noexcept {
  const auto s = stride_[static_cast<std::size_t>(axis)];
  const auto i = (index / s) % static_cast<std::size_t>(n_);
  return (static_cast<double>(i) + 0.5) * h();
}

std::array<double, GridShape::kMaxDim> GridShape::center(std::size_t index) const noexcept {
  std::array<double, kMaxDim> x{};
  const auto idx = unflatten(index);
  for (int k = 0; k < dim_; ++k) x[static_cast<std::size_t>(k)] = (idx[static_cast<std::size_t>(k)] + 0.5) * h();
  return x;
}

GridFunction::GridFunction(GridShape s, std::vector<double> v) : shape(s), values(std::move(v)) {
  if (values.size() != shape.size()) throw InvalidArgument("grid function size does not match its shape");
}

GridFunction GridFunction::sample(GridShape s, const std::function<double(std::span<const double>)>& fn) {
  GridFunction out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = s.center(i);
    out.values[i] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(s.dim())));
  }
  return out;
}

namespace {
void require_same_shape(const GridFunction& a, const GridFunction& b) {
  if (!(a.shape == b.shape)) throw InvalidArgument("grid functions have different shapes");
}
}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_shape(a, b);
  GridFunction out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a.values[i] + b.values[i];
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_shape(a, b);
  GridFunction out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a.values[i] - b.values[i];
  return out;
}

GridFunction operator*(double c, const GridFunction& a) {
  GridFunction out(a.shape);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = c * a.values[i];
  return out;
}

}  // namespace vmolab
