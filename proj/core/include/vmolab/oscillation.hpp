#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vmolab/fields.hpp"
#include "vmolab/grid.hpp"

namespace vmolab::oscillation {

using fields::FieldView;

/// Rigid motion psi(x) = R x + s. Only psi^1(x) = R.row(0) x + s_0 enters the
/// profile comparison; the remaining rows complete R to an orthogonal matrix.
struct DirectionMap {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd shift;

  DirectionMap(Eigen::MatrixXd rotation, Eigen::VectorXd shift);

  static DirectionMap identity(int dim);
  /// 2-D rotation whose first row is (cos theta, sin theta). Entries below
  /// 1e-15 in magnitude are snapped to zero so multiples of 90 degrees are exact.
  static DirectionMap from_angle(double theta);
  /// Orthogonal matrix with first row e (unit vector), completed by Gram-Schmidt.
  static DirectionMap from_direction(const Eigen::VectorXd& e);

  int dim() const noexcept { return static_cast<int>(rotation.rows()); }
  Eigen::VectorXd direction() const { return rotation.row(0).transpose(); }
  double first(std::span<const double> x) const;
  DirectionMap inverse() const;
};

/// Cells whose centers lie in a ball or an axis-aligned half-open cube, clipped to the grid.
struct Region {
  enum class Kind { kBall, kSquare };

  Kind kind = Kind::kSquare;
  std::array<double, GridShape::kMaxDim> anchor{};  ///< ball center or cube lower corner
  double size = 0.0;                                ///< ball radius or cube side

  static Region ball(std::span<const double> center, double radius);
  static Region square(std::span<const double> lo, double side);
  static Region from_window(const GridShape& shape, const fields::Window& window);

  /// Radius of the ball, or half the side of the cube.
  double radius() const noexcept { return kind == Kind::kBall ? size : 0.5 * size; }
  std::array<double, GridShape::kMaxDim> center(int dim) const;
};

/// Flat indices of the grid cells in the region, in increasing order.
std::vector<std::size_t> region_cells(const GridShape& shape, const Region& region);

/// Piecewise-constant profile on uniform bins; bin k is centered at t0 + k * width.
struct OneDProfile {
  double t0 = 0.0;
  double width = 1.0;
  int components = 1;
  std::vector<double> values;  ///< components entries per bin

  std::size_t bins() const noexcept { return values.size() / static_cast<std::size_t>(components); }
  /// Bin of t, or nullopt when t falls outside the covered range.
  std::optional<std::size_t> bin_of(double t) const;
  std::span<const double> at(std::size_t bin) const {
    return std::span<const double>(values).subspan(bin * static_cast<std::size_t>(components),
                                                   static_cast<std::size_t>(components));
  }
};

/// Bin width used for a direction: h * max_k |e_k|.
double projected_bin_width(const GridShape& shape, const DirectionMap& psi);

/// Per-bin average of the field over {x in region : psi^1(x) in bin}.
OneDProfile slab_average_profile(const FieldView& field, const Region& region, const DirectionMap& psi);

struct OscillationReport {
  Region region;
  DirectionMap direction;
  OneDProfile profile;
  double integral = 0.0;         ///< sum |a - abar(psi^1)| h^d, Frobenius norm
  double measure = 0.0;          ///< cells * h^d
  double value = 0.0;            ///< integral / measure
  double value_max_entry = 0.0;  ///< same average with the max-entry norm
};

/// Mean L1 deviation of the field from profile(psi^1(x)) over the region.
OscillationReport oscillation(const FieldView& field, const Region& region, const DirectionMap& psi,
                              const OneDProfile& profile);

/// Minimizes the slab-average oscillation over the supplied directions. Ties keep
/// the earlier direction unless a later one improves by more than 1e-12 relative.
OscillationReport best_direction(const FieldView& field, const Region& region, std::span<const DirectionMap> directions);

/// count directions: 2-D angles k pi / count; 3-D a Fibonacci sample of the upper hemisphere.
std::vector<DirectionMap> uniform_direction_grid(int dim, int count);

/// Every dyadic cube of side < 2 r0 (as an inscribed-ball proxy, side >= 4 cells) plus
/// `random_per_decade` seeded random balls per radius decade [10^-(k+1), 10^-k), k >= 0,
/// kept when radius < r0 and radius >= 2h. Decade samples do not depend on r0, so a
/// larger r0 yields a superset.
std::vector<Region> make_ball_sample(const GridShape& shape, double r0, int random_per_decade, std::uint64_t seed);

struct GammaEstimate {
  double gamma = 0.0;                    ///< sup over the sample of the best-direction value
  std::vector<OscillationReport> balls;  ///< same order as the sample
};

GammaEstimate gamma_profile(const FieldView& field, std::span<const Region> balls,
                            std::span<const DirectionMap> directions);

/// Least k >= 0 with Q cap Q_k nonempty, Q_k = (kappa^-k / 2, kappa^-k)^2; Q is an open square.
std::optional<int> tau_index(const Region& square, double kappa);

/// Closed interval with outward-rounded arithmetic.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct TailSumReport {
  Interval tail;        ///< enclosure of sum_{i > tau} |Q cap Q_i|
  Interval bound;       ///< enclosure of 4 (kappa^2 - 1)^-1 |Q|
  bool holds = false;   ///< tail.hi <= bound.lo
  bool termwise = true; ///< |Q cap Q_i| <= 4 kappa^(2 tau - 2 i) |Q| for every i > tau
  bool geometry = true; ///< side >= kappa^-tau / 4 whenever some i > tau meets Q
  int terms = 0;        ///< explicit terms summed before the closed-form remainder
};

TailSumReport tail_sum_check(const Region& square, double kappa, int tau);

/// Largest number of example terms whose supports span at least two cells per side.
int resolved_terms(double kappa, int resolution);

struct SquareBound {
  fields::Window window;
  std::optional<int> tau;        ///< least resolved term index meeting the square
  double m = 0.0;                ///< int_Q |a - abar(psi^1)|
  double first_term = 0.0;       ///< int_I |f| * int_J |zeta - zeta_bar|
  double tail = 0.0;             ///< cells of Q inside later supports, times h^2
  double measure = 0.0;
  TailSumReport tail_check;
  bool discrete_pass = false;    ///< m <= first_term + tail (up to rounding)
  bool gamma_pass = false;       ///< m / |Q| <= (bmo + 4 / (kappa^2 - 1)) * (1 + tolerance)
};

struct ExampleBoundReport {
  double measured_bmo = 0.0;  ///< sup over resolved tau and dyadic intervals of the 1-D zeta oscillation
  double gamma_bound = 0.0;   ///< measured_bmo + 4 / (kappa^2 - 1)
  double max_ratio = 0.0;     ///< max over squares of m / |Q|
  std::vector<SquareBound> squares;
  bool all_pass = true;
};

/// Checks the example's oscillation bound on every dyadic square of side >=
/// min_side_cells. Terms beyond the resolved count are dropped from the field.
ExampleBoundReport verify_example_bound(const fields::ExampleParams& params, int resolution, int min_side_cells = 8,
                                        double tolerance = 0.05);

/// Same check on a pre-sampled field (which must come from `params`).
ExampleBoundReport verify_example_bound(const fields::ExampleParams& params, const fields::ScalarField& field,
                                        int min_side_cells = 8, double tolerance = 0.05);

}  // namespace vmolab::oscillation
