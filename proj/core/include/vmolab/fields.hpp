#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "vmolab/grid.hpp"

namespace vmolab::fields {

/// ln(min(|x|, 1)); -infinity at x = 0.
double logarithm_bmo_seed(double x);

/// zeta(x) = sin(eps * ln(min(|4x - 3|, 1))), supported in (1/2, 1), |zeta| <= 1.
/// The singular point x = 3/4 maps to 0; cell-centered grids never sample it.
double zeta_bump(double x, double epsilon);

enum class ProfileKind { kIndicator, kSquareWave, kRandomStep };

/// A measurable f with support in (1/2, 1) and |f| <= 1.
class SupportProfile {
 public:
  static SupportProfile indicator();
  /// +1/-1 alternating on `periods` equal sub-intervals pairs of (1/2, 1).
  static SupportProfile square_wave(int periods);
  /// `steps` equal sub-intervals with seeded uniform values in [-1, 1].
  static SupportProfile random_step(int steps, std::uint64_t seed);

  double operator()(double x) const;
  ProfileKind kind() const noexcept { return kind_; }

  nlohmann::json to_json() const;
  static SupportProfile from_json(const nlohmann::json& j);

 private:
  ProfileKind kind_ = ProfileKind::kIndicator;
  int periods_ = 1;
  std::uint64_t seed_ = 0;
  std::vector<double> steps_;
};

/// Parameters of the oscillating two-scale example field.
struct ExampleParams {
  double epsilon = 0.1;
  double kappa = 8.0;
  int n_terms = 4;  ///< number of terms r = 0..n_terms-1 kept
  SupportProfile profile = SupportProfile::indicator();

  nlohmann::json to_json() const;
};

/// Throws InvalidArgument unless kappa >= 4, epsilon > 0, n_terms >= 1.
void validate(const ExampleParams& params);

/// Term r of the example: f(k^r x) zeta(k^r y) for even r, f(k^r y) zeta(k^r x)
/// for odd r. Supported in Q_r = (k^-r / 2, k^-r)^2.
double example_term(const ExampleParams& params, int r, double x, double y);
double example_value(const ExampleParams& params, double x, double y);

/// Read-only view of grid samples with `components` values per sample.
struct FieldView {
  GridShape shape;
  int components;
  std::span<const double> data;

  std::span<const double> at(std::size_t index) const {
    return data.subspan(index * static_cast<std::size_t>(components), static_cast<std::size_t>(components));
  }
};

/// Scalar grid samples plus the parameters that produced them.
struct ScalarField {
  GridShape shape;
  std::vector<double> values;
  nlohmann::json params = nlohmann::json::object();

  FieldView view() const { return FieldView{shape, 1, values}; }
};

/// Samples the example field on the cell-centered grid of [0,1)^2.
ScalarField example_field(const ExampleParams& params, int resolution);

/// Axis-aligned cube of `side` cells whose lowest cell has multi-index `lo`.
struct Window {
  std::array<int, GridShape::kMaxDim> lo{};
  int side = 1;
};

/// Every dyadic cube of the grid with side >= min_side_cells (n must be a power of two).
std::vector<Window> dyadic_windows(const GridShape& shape, int min_side_cells);

/// (1/|Q|) sum_Q |a - a_Q| h^d over the window's cells, |.| Frobenius over components.
double window_mean_oscillation(const FieldView& field, const Window& window);

/// sup over windows of mean oscillation. Windows must lie in the grid and hold >= 4 cells.
double bmo_seminorm(const ScalarField& field, std::span<const Window> windows);

/// sup over dyadic intervals of >= min_cells samples of the mean oscillation
/// of a 1-D sample vector (length a power of two).
double dyadic_bmo_1d(std::span<const double> samples, int min_cells);

/// Symmetric matrix field a^{ij} with optional lower-order terms b^i, c.
struct MatrixField {
  GridShape shape;
  std::vector<double> a;  ///< d*d entries per sample, row-major
  double delta = 0.5;
  std::vector<double> b;  ///< d entries per sample, empty when absent
  std::vector<double> c;  ///< one entry per sample, empty when absent
  double K = 0.0;
  nlohmann::json params = nlohmann::json::object();

  int dim() const noexcept { return shape.dim(); }
  bool has_lower_order() const noexcept { return !b.empty() || !c.empty(); }
  Eigen::Map<const Eigen::MatrixXd> matrix(std::size_t index) const {
    const auto d = static_cast<std::size_t>(dim());
    return Eigen::Map<const Eigen::MatrixXd>(a.data() + index * d * d, dim(), dim());
  }
  FieldView view() const { return FieldView{shape, dim() * dim(), a}; }
};

struct EllipticityReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double max_asymmetry = 0.0;
  double max_lower_order = 0.0;
};

EllipticityReport measure_ellipticity(const MatrixField& field);

/// Throws InvalidArgument unless a is symmetric with spectrum in [delta, 1/delta]
/// and |b^i|, |c| <= K.
void validate(const MatrixField& field);

/// a^{ij} = m(x) delta_ij with m = mid + half * s / max|s|, mapping the scalar
/// field into [delta + margin, 1/delta - margin]; margin = margin_fraction * (1/delta - delta).
MatrixField embed_as_matrix(const ScalarField& field, double delta, double margin_fraction = 0.01);

/// t -> symmetric d x d matrix.
using MatrixProfile = std::function<Eigen::MatrixXd(double)>;

MatrixField constant_field(const GridShape& shape, const Eigen::MatrixXd& matrix, double delta);
/// a(x) = profile(x^1).
MatrixField one_directional_field(const GridShape& shape, const MatrixProfile& profile, double delta);
/// a(x) = profile(e . x) for a unit vector e.
MatrixField rotated_one_directional_field(const GridShape& shape, const MatrixProfile& profile,
                                          std::span<const double> direction, double delta);

enum class ReferenceKind { kConstant, kOneDirectional, kRotatedOneDirectional };

struct ReferenceParams {
  Eigen::MatrixXd matrix;         ///< kConstant
  MatrixProfile profile;          ///< one-directional kinds
  std::vector<double> direction;  ///< kRotatedOneDirectional
  double delta = 0.5;
};

MatrixField reference_field(ReferenceKind kind, const GridShape& shape, const ReferenceParams& params);

/// Alternates diag(delta, 1/delta, ...) and diag(1/delta, delta, ...) on t-intervals of `width`.
MatrixProfile checkerboard_profile(int dim, double delta, double width);

/// Field snapshot: row-major float64 samples plus a JSON sidecar at `<path>.json`.
struct Snapshot {
  GridShape shape;
  int components;
  std::vector<double> data;
  nlohmann::json meta;
};

void write_snapshot(const std::filesystem::path& path, const FieldView& view, const nlohmann::json& meta);
Snapshot read_snapshot(const std::filesystem::path& path);

nlohmann::json sidecar(const ScalarField& field);
nlohmann::json sidecar(const MatrixField& field);
ScalarField scalar_from_snapshot(Snapshot snapshot);
MatrixField matrix_from_snapshot(Snapshot snapshot);

}  // namespace vmolab::fields
