#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "vmolab/cutoff.hpp"
#include "vmolab/fields.hpp"
#include "vmolab/grid.hpp"
#include "vmolab/oscillation.hpp"

namespace vmolab::solver {

using fields::MatrixField;

/// Discretized a^{ij} D_i D_j + b^i D_i + c - lambda on the periodic grid.
struct SparseOperator {
  GridShape shape;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  double lambda = 0.0;
  /// Smallest lambda making the assembled matrix weakly diagonally dominant,
  /// max_i (L_ii + sum_{j != i} |L_ij|) clamped at 0. Reported, not enforced.
  double gershgorin_lambda = 0.0;
};

/// Second differences for a^{ii}, the 4-point cross 2 a^{ij} (u++ - u+- - u-+ + u--) / (4h^2)
/// for i < j, central first differences for b^i. Lower-order terms come from the field.
SparseOperator discretize(const MatrixField& field, double lambda);

GridFunction apply(const SparseOperator& op, const GridFunction& u);

struct SolveOptions {
  double tolerance = 1e-10;  ///< relative residual ||A u - f||_2 / ||f||_2
  int max_iterations = 100000;
  int restarts = 5;
};

struct SolveResult {
  GridFunction u;
  int iterations = 0;
  double residual = 0.0;  ///< relative residual, recomputed by an independent product
};

/// BiCGSTAB with a diagonal preconditioner, restarted from the current iterate
/// with a tighter inner tolerance until the verified residual meets the target.
/// Throws SolverError when the iteration cap or restart budget runs out.
SolveResult solve(const SparseOperator& op, const GridFunction& f, const SolveOptions& options = {});

/// (sum |g|^p h^d)^(1/p), p >= 1.
double lp_norm(const GridFunction& g, double p);
/// L_p norm of pointwise values already combined across components.
double lp_norm(const GridShape& shape, std::span<const double> values, double p);

/// Central differences, periodic; one function per axis.
std::vector<GridFunction> difference_gradient(const GridFunction& g);
/// d*d functions, row-major; diagonal by second differences, off-diagonal by the 4-point cross.
std::vector<GridFunction> difference_hessian(const GridFunction& g);

/// ||u_x||_p with the Euclidean magnitude of the gradient at each point.
double gradient_norm(const GridFunction& u, double p);
/// ||u_xx||_p with the Frobenius magnitude of the Hessian at each point.
double hessian_norm(const GridFunction& u, double p);

/// (4/h^2) sin^2(pi h): minus the discrete symbol of d^2/dx^2 on sin(2 pi x).
double sine_symbol(double h);

struct AprioriReport {
  double lambda = 0.0;
  double p = 0.0;
  std::size_t case_index = 0;
  double norm_u = 0.0;
  double norm_ux = 0.0;
  double norm_uxx = 0.0;
  double norm_rhs = 0.0;  ///< ||L u - lambda u||_p, recomputed from u
  double implied_constant = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::optional<std::string> error;  ///< set when the solve failed
};

/// (lambda ||u|| + sqrt(lambda) ||u_x|| + ||u_xx||) / ||L u - lambda u|| for u solving (L - lambda) u = f.
/// Reports are ordered by lambda index, then by f index.
std::vector<AprioriReport> apriori_probe(const MatrixField& field, std::span<const double> lambdas, double p,
                                         std::span<const GridFunction> rhs_family, const SolveOptions& options = {});

/// Random trigonometric polynomials sum_{0 < |k|_inf <= max_frequency} c_k e(k.x) with
/// coefficients of size (1 + |k|^2)^-1, seeded per member.
std::vector<GridFunction> random_smooth_family(const GridShape& shape, std::size_t count, std::uint64_t seed,
                                               int max_frequency = 4);

struct InterpolationReport {
  double norm_u = 0.0;
  double norm_ux = 0.0;
  double norm_uxx = 0.0;
  /// sup over eps > 0 of eps (||u_x|| - eps ||u_xx||) / ||u||, attained at eps = ||u_x|| / (2 ||u_xx||).
  double required_constant = 0.0;
  std::vector<double> epsilons;
  std::vector<double> required_at;  ///< smallest C for each listed eps (clamped at 0)
};

/// ||u_x|| <= eps ||u_xx|| + C eps^-1 ||u||: the constant each u requires.
InterpolationReport interpolation_probe(const GridFunction& u, double p, std::span<const double> epsilons);

struct InterpolationFit {
  double constant = 0.0;  ///< max over the corpus of required_constant
  double median = 0.0;
  double min_ratio = 0.0;  ///< min required_constant / median
  double max_ratio = 0.0;  ///< max required_constant / median
  bool admits_all = true;  ///< the fitted constant satisfies every (u, eps) pair
  std::vector<InterpolationReport> reports;
};

InterpolationFit fit_interpolation(std::span<const GridFunction> corpus, double p, std::span<const double> epsilons);

/// R Hess(u) R^T pointwise for a rigid motion with rotation R, row-major d*d.
std::vector<GridFunction> rotated_hessian(const GridFunction& u, const oscillation::DirectionMap& psi);

struct PointwiseFit {
  double constant = 0.0;  ///< max of |u_xx| / (sum_{ij>1} |u_ij| + |u_x| + |L0 u|)
  std::vector<double> per_function;
};

/// Fits the pointwise bound |u_xx| <= N (sum_{ij>1} |u_ij| + |u_x| + |L0 u|) over a corpus,
/// where u_ij are rotated second derivatives. Points whose right side is below
/// 1e-8 of its maximum are skipped.
PointwiseFit pointwise_estimate_probe(const MatrixField& field, std::span<const GridFunction> corpus,
                                      const oscillation::DirectionMap& psi);

struct LocalEstimateReport {
  double radius = 0.0;
  double p = 0.0;
  double fitted_constant = 0.0;  ///< max over the corpus of ||u_xx|| / (||L0 u|| + ||u_x||)
  std::vector<double> per_function;
  std::optional<double> gamma;   ///< oscillation estimate of the field, when supplied
};

/// Bump(|x - center| / radius) times a random polynomial of degree <= 2, seeded.
std::vector<GridFunction> bump_polynomial_family(const GridShape& shape, std::span<const double> center, double radius,
                                                 std::size_t count, std::uint64_t seed);

LocalEstimateReport local_estimate_probe(const MatrixField& field, double p, std::span<const GridFunction> corpus,
                                         double radius, std::optional<double> gamma = std::nullopt);

inline constexpr std::size_t kDefaultLiftCap = std::size_t{1} << 22;

struct AgmonReport {
  double mu = 0.0;
  double h = 0.0;
  double residual = 0.0;  ///< max |L~ u~ - rhs| over the lifted grid
  double scale = 0.0;     ///< max |rhs|
};

/// Builds u~(x, y) = u(x) zeta(y) cos(mu y) on the (d+1)-dimensional grid, applies the
/// discrete a^{ij} D_i D_j + D_yy, and compares with
/// zeta cos(mu y) [L_h u - mu^2 u] + u [zeta'' cos(mu y) - 2 mu zeta' sin(mu y)].
AgmonReport agmon_lift_check(const GridFunction& u, const cutoff::ZetaCutoff& zeta, double mu,
                             const MatrixField& field, std::size_t cap = kDefaultLiftCap);

/// int |zeta(y) cos(mu y)|^p dy by composite Simpson on the support of zeta.
double zeta_cos_lp(const cutoff::ZetaCutoff& zeta, double mu, double p, int nodes = 4000);

struct ZetaCosMinimum {
  double value = 0.0;
  double mu = 0.0;
};

/// Minimum of zeta_cos_lp over mu = 0, step, 2 step, ..., mu_max.
ZetaCosMinimum min_zeta_cos_lp(const cutoff::ZetaCutoff& zeta, double p, double mu_max, double step, int nodes = 4000);

}  // namespace vmolab::solver
