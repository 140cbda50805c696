#include "vmolab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include <Eigen/IterativeLinearSolvers>

#include "vmolab/error.hpp"
#include "vmolab/parallel.hpp"

namespace vmolab::solver {

namespace {

using Triplet = Eigen::Triplet<double>;

struct RowEntries {
  std::vector<std::pair<std::size_t, double>> entries;
  void add(std::size_t col, double value) { entries.emplace_back(col, value); }
};

void require_shape(const GridShape& a, const GridShape& b) {
  if (!(a == b)) throw InvalidArgument("grid shapes do not match");
}

Eigen::Map<const Eigen::VectorXd> as_vector(const GridFunction& g) {
  return Eigen::Map<const Eigen::VectorXd>(g.values.data(), static_cast<Eigen::Index>(g.values.size()));
}

MatrixField without_lower_order(const MatrixField& field) {
  MatrixField out = field;
  out.b.clear();
  out.c.clear();
  out.K = 0.0;
  return out;
}

}  // namespace

SparseOperator discretize(const MatrixField& field, double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be nonnegative");
  const GridShape& shape = field.shape;
  const int d = shape.dim();
  const auto dd = static_cast<std::size_t>(d);
  if (field.a.size() != shape.size() * dd * dd) throw InvalidArgument("matrix field size does not match its grid");
  if (!field.b.empty() && field.b.size() != shape.size() * dd) throw InvalidArgument("drift size does not match grid");
  if (!field.c.empty() && field.c.size() != shape.size()) throw InvalidArgument("potential size does not match grid");
  const double h = shape.h();
  const double ih2 = 1.0 / (h * h);

  std::vector<RowEntries> rows(shape.size());
  parallel_for(shape.size(), [&](std::size_t i) {
    auto& row = rows[i];
    row.entries.reserve(1 + 2 * dd + 2 * dd * (dd - 1));
    const double* a = field.a.data() + i * dd * dd;
    double diag = 0.0;
    for (int k = 0; k < d; ++k) {
      const double akk = a[static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(k)];
      row.add(shape.shifted(i, k, 1), akk * ih2);
      row.add(shape.shifted(i, k, -1), akk * ih2);
      diag -= 2.0 * akk * ih2;
    }
    for (int k = 0; k < d; ++k) {
      for (int l = k + 1; l < d; ++l) {
        // a^{kl} + a^{lk} = 2 a^{kl} for symmetric a.
        const double akl = a[static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(l)] +
                           a[static_cast<std::size_t>(l) * dd + static_cast<std::size_t>(k)];
        const double w = akl * 0.25 * ih2;
        if (w == 0.0) continue;
        const auto kp = shape.shifted(i, k, 1);
        const auto km = shape.shifted(i, k, -1);
        row.add(shape.shifted(kp, l, 1), w);
        row.add(shape.shifted(kp, l, -1), -w);
        row.add(shape.shifted(km, l, 1), -w);
        row.add(shape.shifted(km, l, -1), w);
      }
    }
    if (!field.b.empty()) {
      for (int k = 0; k < d; ++k) {
        const double bk = field.b[i * dd + static_cast<std::size_t>(k)] * 0.5 / h;
        if (bk == 0.0) continue;
        row.add(shape.shifted(i, k, 1), bk);
        row.add(shape.shifted(i, k, -1), -bk);
      }
    }
    if (!field.c.empty()) diag += field.c[i];
    row.add(i, diag);
  });

  std::vector<Triplet> triplets;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.entries.size();
  triplets.reserve(total);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [col, value] : rows[i].entries) {
      triplets.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col), value);
    }
  }
  SparseOperator op{shape, Eigen::SparseMatrix<double, Eigen::RowMajor>(static_cast<Eigen::Index>(shape.size()),
                                                                        static_cast<Eigen::Index>(shape.size())),
                    lambda, 0.0};
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());

  double worst = 0.0;
  for (Eigen::Index r = 0; r < op.matrix.outerSize(); ++r) {
    double diag = 0.0;
    double off = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(op.matrix, r); it; ++it) {
      if (it.col() == r) {
        diag = it.value();
      } else {
        off += std::abs(it.value());
      }
    }
    worst = std::max(worst, diag + off);
  }
  op.gershgorin_lambda = worst;

  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) op.matrix.coeffRef(r, r) -= lambda;
  op.matrix.makeCompressed();
  return op;
}

GridFunction apply(const SparseOperator& op, const GridFunction& u) {
  require_shape(op.shape, u.shape);
  GridFunction out(u.shape);
  Eigen::Map<Eigen::VectorXd>(out.values.data(), static_cast<Eigen::Index>(out.size())) = op.matrix * as_vector(u);
  return out;
}

SolveResult solve(const SparseOperator& op, const GridFunction& f, const SolveOptions& options) {
  require_shape(op.shape, f.shape);
  if (!(options.tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  const auto b = as_vector(f);
  const double bnorm = b.norm();
  SolveResult result{GridFunction(f.shape), 0, 0.0};
  if (bnorm == 0.0) return result;

  Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>, Eigen::DiagonalPreconditioner<double>> krylov;
  krylov.compute(op.matrix);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  double inner = options.tolerance;
  double residual = 1.0;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    const int budget = options.max_iterations - result.iterations;
    if (budget <= 0) break;
    krylov.setTolerance(inner);
    krylov.setMaxIterations(budget);
    x = krylov.solveWithGuess(b, x);
    result.iterations += static_cast<int>(krylov.iterations());
    residual = (op.matrix * x - b).norm() / bnorm;
    if (!std::isfinite(residual)) break;
    if (residual <= options.tolerance) {
      result.u.values.assign(x.data(), x.data() + x.size());
      result.residual = residual;
      return result;
    }
    inner *= 0.1;
  }
  throw SolverError("iterative solve did not reach the requested residual", result.iterations, residual);
}

double lp_norm(const GridShape& shape, std::span<const double> values, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum * shape.cell_volume(), 1.0 / p);
}

double lp_norm(const GridFunction& g, double p) { return lp_norm(g.shape, g.values, p); }

std::vector<GridFunction> difference_gradient(const GridFunction& g) {
  const auto& shape = g.shape;
  const double inv = 0.5 / shape.h();
  std::vector<GridFunction> out(static_cast<std::size_t>(shape.dim()), GridFunction(shape));
  for (int k = 0; k < shape.dim(); ++k) {
    auto& dk = out[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < g.size(); ++i) {
      dk.values[i] = (g.values[shape.shifted(i, k, 1)] - g.values[shape.shifted(i, k, -1)]) * inv;
    }
  }
  return out;
}

std::vector<GridFunction> difference_hessian(const GridFunction& g) {
  const auto& shape = g.shape;
  const int d = shape.dim();
  const auto dd = static_cast<std::size_t>(d);
  const double ih2 = 1.0 / (shape.h() * shape.h());
  std::vector<GridFunction> out(dd * dd, GridFunction(shape));
  for (int k = 0; k < d; ++k) {
    auto& dkk = out[static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < g.size(); ++i) {
      dkk.values[i] =
          (g.values[shape.shifted(i, k, 1)] - 2.0 * g.values[i] + g.values[shape.shifted(i, k, -1)]) * ih2;
    }
    for (int l = k + 1; l < d; ++l) {
      auto& dkl = out[static_cast<std::size_t>(k) * dd + static_cast<std::size_t>(l)];
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto kp = shape.shifted(i, k, 1);
        const auto km = shape.shifted(i, k, -1);
        dkl.values[i] = (g.values[shape.shifted(kp, l, 1)] - g.values[shape.shifted(kp, l, -1)] -
                         g.values[shape.shifted(km, l, 1)] + g.values[shape.shifted(km, l, -1)]) *
                        0.25 * ih2;
      }
      out[static_cast<std::size_t>(l) * dd + static_cast<std::size_t>(k)] = dkl;
    }
  }
  return out;
}

namespace {

std::vector<double> pointwise_magnitude(const std::vector<GridFunction>& parts) {
  std::vector<double> mag(parts.front().size(), 0.0);
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += part.values[i] * part.values[i];
  }
  for (double& m : mag) m = std::sqrt(m);
  return mag;
}

}  // namespace

double gradient_norm(const GridFunction& u, double p) {
  return lp_norm(u.shape, pointwise_magnitude(difference_gradient(u)), p);
}

double hessian_norm(const GridFunction& u, double p) {
  return lp_norm(u.shape, pointwise_magnitude(difference_hessian(u)), p);
}

double sine_symbol(double h) {
  const double s = std::sin(std::numbers::pi * h);
  return 4.0 * s * s / (h * h);
}

std::vector<AprioriReport> apriori_probe(const MatrixField& field, std::span<const double> lambdas, double p,
                                         std::span<const GridFunction> rhs_family, const SolveOptions& options) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  for (const auto& f : rhs_family) require_shape(field.shape, f.shape);
  std::vector<SparseOperator> ops;
  ops.reserve(lambdas.size());
  for (double lambda : lambdas) ops.push_back(discretize(field, lambda));

  const std::size_t nf = rhs_family.size();
  std::vector<AprioriReport> reports(lambdas.size() * nf);
  parallel_for(reports.size(), [&](std::size_t k) {
    const std::size_t li = k / nf;
    const std::size_t fi = k % nf;
    auto& r = reports[k];
    r.lambda = lambdas[li];
    r.p = p;
    r.case_index = fi;
    try {
      auto s = solve(ops[li], rhs_family[fi], options);
      r.iterations = s.iterations;
      r.residual = s.residual;
      r.norm_u = lp_norm(s.u, p);
      r.norm_ux = gradient_norm(s.u, p);
      r.norm_uxx = hessian_norm(s.u, p);
      r.norm_rhs = lp_norm(apply(ops[li], s.u), p);
      if (r.norm_rhs == 0.0) {
        r.error = "zero right-hand side";
      } else {
        r.implied_constant = (r.lambda * r.norm_u + std::sqrt(r.lambda) * r.norm_ux + r.norm_uxx) / r.norm_rhs;
      }
    } catch (const SolverError& e) {
      r.iterations = e.iterations();
      r.residual = e.residual();
      r.error = e.what();
    }
  });
  return reports;
}

std::vector<GridFunction> random_smooth_family(const GridShape& shape, std::size_t count, std::uint64_t seed,
                                               int max_frequency) {
  if (max_frequency < 1) throw InvalidArgument("max frequency must be positive");
  const int d = shape.dim();
  // Half of the frequency cube: k != 0 whose first nonzero entry is positive.
  std::vector<std::array<int, GridShape::kMaxDim>> freqs;
  std::array<int, GridShape::kMaxDim> k{};
  for (int a = 0; a < d; ++a) k[static_cast<std::size_t>(a)] = -max_frequency;
  while (true) {
    int lead = 0;
    for (int a = 0; a < d && lead == 0; ++a) lead = k[static_cast<std::size_t>(a)];
    if (lead > 0) freqs.push_back(k);
    int a = d - 1;
    for (; a >= 0; --a) {
      auto& ka = k[static_cast<std::size_t>(a)];
      if (++ka <= max_frequency) break;
      ka = -max_frequency;
    }
    if (a < 0) break;
  }

  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(m)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::pair<double, double>> coef(freqs.size());
    for (std::size_t f = 0; f < freqs.size(); ++f) {
      double k2 = 0.0;
      for (int a = 0; a < d; ++a) k2 += freqs[f][static_cast<std::size_t>(a)] * freqs[f][static_cast<std::size_t>(a)];
      const double w = 1.0 / (1.0 + k2);
      coef[f] = {w * normal(rng), w * normal(rng)};
    }
    GridFunction g(shape);
    parallel_for(shape.size(), [&](std::size_t i) {
      const auto x = shape.center(i);
      double v = 0.0;
      for (std::size_t f = 0; f < freqs.size(); ++f) {
        double phase = 0.0;
        for (int a = 0; a < d; ++a) phase += freqs[f][static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
        phase *= 2.0 * std::numbers::pi;
        v += coef[f].first * std::cos(phase) + coef[f].second * std::sin(phase);
      }
      g.values[i] = v;
    });
    out.push_back(std::move(g));
  }
  return out;
}

InterpolationReport interpolation_probe(const GridFunction& u, double p, std::span<const double> epsilons) {
  InterpolationReport r;
  r.norm_u = lp_norm(u, p);
  r.norm_ux = gradient_norm(u, p);
  r.norm_uxx = hessian_norm(u, p);
  r.epsilons.assign(epsilons.begin(), epsilons.end());
  if (r.norm_u == 0.0) {
    if (r.norm_ux > 0.0) throw InvalidArgument("interpolation probe needs a nonzero function");
    r.required_at.assign(epsilons.size(), 0.0);
    return r;
  }
  if (r.norm_uxx > 0.0) r.required_constant = r.norm_ux * r.norm_ux / (4.0 * r.norm_uxx * r.norm_u);
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw InvalidArgument("epsilon must be positive");
    r.required_at.push_back(std::max(0.0, eps * (r.norm_ux - eps * r.norm_uxx) / r.norm_u));
  }
  return r;
}

InterpolationFit fit_interpolation(std::span<const GridFunction> corpus, double p, std::span<const double> epsilons) {
  if (corpus.empty()) throw InvalidArgument("interpolation corpus is empty");
  InterpolationFit fit;
  fit.reports.resize(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t k) { fit.reports[k] = interpolation_probe(corpus[k], p, epsilons); });
  std::vector<double> c;
  for (const auto& r : fit.reports) c.push_back(r.required_constant);
  fit.constant = *std::max_element(c.begin(), c.end());
  std::vector<double> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  fit.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (fit.median > 0.0) {
    fit.min_ratio = sorted.front() / fit.median;
    fit.max_ratio = sorted.back() / fit.median;
  }
  for (const auto& r : fit.reports) {
    for (double eps : r.epsilons) {
      const double rhs = eps * r.norm_uxx + fit.constant / eps * r.norm_u;
      if (r.norm_ux > rhs * (1.0 + 1e-12)) fit.admits_all = false;
    }
  }
  return fit;
}

std::vector<GridFunction> rotated_hessian(const GridFunction& u, const oscillation::DirectionMap& psi) {
  const int d = u.shape.dim();
  if (psi.dim() != d) throw InvalidArgument("direction map dimension does not match the grid");
  const auto dd = static_cast<std::size_t>(d);
  const auto hess = difference_hessian(u);
  const Eigen::MatrixXd& r = psi.rotation;
  std::vector<GridFunction> out(dd * dd, GridFunction(u.shape));
  Eigen::MatrixXd h(d, d);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t a = 0; a < dd; ++a) {
      for (std::size_t b = 0; b < dd; ++b) h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = hess[a * dd + b].values[i];
    }
    const Eigen::MatrixXd rh = r * h * r.transpose();
    for (std::size_t a = 0; a < dd; ++a) {
      for (std::size_t b = 0; b < dd; ++b) out[a * dd + b].values[i] = rh(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

PointwiseFit pointwise_estimate_probe(const MatrixField& field, std::span<const GridFunction> corpus,
                                      const oscillation::DirectionMap& psi) {
  const auto op = discretize(without_lower_order(field), 0.0);
  const auto dd = static_cast<std::size_t>(field.dim());
  PointwiseFit fit;
  fit.per_function.resize(corpus.size(), 0.0);
  parallel_for(corpus.size(), [&](std::size_t k) {
    const auto& u = corpus[k];
    require_shape(field.shape, u.shape);
    const auto lu = apply(op, u);
    const auto hess = pointwise_magnitude(difference_hessian(u));
    const auto grad = pointwise_magnitude(difference_gradient(u));
    const auto rot = rotated_hessian(u, psi);
    std::vector<double> rhs(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      double s = grad[i] + std::abs(lu.values[i]);
      for (std::size_t e = 1; e < dd * dd; ++e) s += std::abs(rot[e].values[i]);
      rhs[i] = s;
    }
    const double floor = 1e-8 * *std::max_element(rhs.begin(), rhs.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (rhs[i] > floor) worst = std::max(worst, hess[i] / rhs[i]);
    }
    fit.per_function[k] = worst;
  });
  for (double v : fit.per_function) fit.constant = std::max(fit.constant, v);
  return fit;
}

std::vector<GridFunction> bump_polynomial_family(const GridShape& shape, std::span<const double> center, double radius,
                                                 std::size_t count, std::uint64_t seed) {
  const int d = shape.dim();
  if (center.size() != static_cast<std::size_t>(d)) throw InvalidArgument("ball center has wrong dimension");
  if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
  for (double c : center) {
    if (c - radius <= 0.0 || c + radius >= 1.0) throw InvalidArgument("support ball must lie inside the unit cube");
  }
  const auto dd = static_cast<std::size_t>(d);
  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(m)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double c0 = normal(rng);
    std::vector<double> lin(dd);
    for (double& c : lin) c = normal(rng);
    std::vector<double> quad(dd * dd);
    for (double& c : quad) c = normal(rng);
    out.push_back(GridFunction::sample(shape, [&](std::span<const double> x) {
      double r2 = 0.0;
      std::vector<double> z(dd);
      for (std::size_t a = 0; a < dd; ++a) {
        z[a] = (x[a] - center[a]) / radius;
        r2 += z[a] * z[a];
      }
      if (r2 >= 1.0) return 0.0;
      double poly = c0;
      for (std::size_t a = 0; a < dd; ++a) {
        poly += lin[a] * z[a];
        for (std::size_t b = 0; b < dd; ++b) poly += quad[a * dd + b] * z[a] * z[b];
      }
      return std::exp(1.0 - 1.0 / (1.0 - r2)) * poly;
    }));
  }
  return out;
}

LocalEstimateReport local_estimate_probe(const MatrixField& field, double p, std::span<const GridFunction> corpus,
                                         double radius, std::optional<double> gamma) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  const auto op = discretize(without_lower_order(field), 0.0);
  LocalEstimateReport r;
  r.radius = radius;
  r.p = p;
  r.gamma = gamma;
  r.per_function.resize(corpus.size(), 0.0);
  parallel_for(corpus.size(), [&](std::size_t k) {
    const auto& u = corpus[k];
    require_shape(field.shape, u.shape);
    const double lhs = hessian_norm(u, p);
    const double rhs = lp_norm(apply(op, u), p) + gradient_norm(u, p);
    r.per_function[k] = rhs > 0.0 ? lhs / rhs : 0.0;
  });
  for (double v : r.per_function) r.fitted_constant = std::max(r.fitted_constant, v);
  return r;
}

AgmonReport agmon_lift_check(const GridFunction& u, const cutoff::ZetaCutoff& zeta, double mu,
                             const MatrixField& field, std::size_t cap) {
  require_shape(field.shape, u.shape);
  const int d = u.shape.dim();
  if (d + 1 > GridShape::kMaxDim) throw InvalidArgument("lifted dimension exceeds the grid limit");
  const int n = u.shape.n();
  if (u.size() > cap / static_cast<std::size_t>(n)) throw CapacityError("lifted grid exceeds the configured cap");
  const GridShape lifted(d + 1, n);
  const auto dd = static_cast<std::size_t>(d);
  const auto dl = dd + 1;
  const auto nn = static_cast<std::size_t>(n);

  MatrixField lift{lifted, std::vector<double>(lifted.size() * dl * dl, 0.0), field.delta, {}, {}, 0.0, {}};
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      double* a = lift.a.data() + (i * nn + j) * dl * dl;
      for (std::size_t p = 0; p < dd; ++p) {
        for (std::size_t q = 0; q < dd; ++q) a[p * dl + q] = field.a[i * dd * dd + p * dd + q];
      }
      a[dd * dl + dd] = 1.0;
    }
  }

  const double h = u.shape.h();
  std::vector<cutoff::Jet2> z(nn);
  for (std::size_t j = 0; j < nn; ++j) z[j] = zeta.jet((static_cast<double>(j) + 0.5) * h);

  GridFunction lifted_u(lifted);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      const double y = (static_cast<double>(j) + 0.5) * h;
      lifted_u.values[i * nn + j] = u.values[i] * z[j].v * std::cos(mu * y);
    }
  }
  const auto lhs = apply(discretize(lift, 0.0), lifted_u);
  const auto lu = apply(discretize(without_lower_order(field), 0.0), u);

  AgmonReport r{mu, h, 0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      const double y = (static_cast<double>(j) + 0.5) * h;
      const double c = std::cos(mu * y);
      const double s = std::sin(mu * y);
      const double rhs = z[j].v * c * (lu.values[i] - mu * mu * u.values[i]) +
                         u.values[i] * (z[j].d2 * c - 2.0 * mu * z[j].d1 * s);
      r.residual = std::max(r.residual, std::abs(lhs.values[i * nn + j] - rhs));
      r.scale = std::max(r.scale, std::abs(rhs));
    }
  }
  return r;
}

double zeta_cos_lp(const cutoff::ZetaCutoff& zeta, double mu, double p, int nodes) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  if (nodes < 2) throw InvalidArgument("quadrature needs at least two intervals");
  if (nodes % 2 == 1) ++nodes;
  const double a = zeta.support_lo();
  const double b = zeta.support_hi();
  const double step = (b - a) / nodes;
  double sum = 0.0;
  for (int k = 0; k <= nodes; ++k) {
    const double y = a + k * step;
    const double w = (k == 0 || k == nodes) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * std::pow(std::abs(zeta(y) * std::cos(mu * y)), p);
  }
  return sum * step / 3.0;
}

ZetaCosMinimum min_zeta_cos_lp(const cutoff::ZetaCutoff& zeta, double p, double mu_max, double step, int nodes) {
  if (!(step > 0.0) || !(mu_max >= 0.0)) throw InvalidArgument("mu grid needs step > 0 and mu_max >= 0");
  const auto count = static_cast<std::size_t>(std::floor(mu_max / step + 1e-9)) + 1;
  std::vector<double> values(count);
  parallel_for(count, [&](std::size_t k) { values[k] = zeta_cos_lp(zeta, static_cast<double>(k) * step, p, nodes); });
  const auto it = std::min_element(values.begin(), values.end());
  return {*it, static_cast<double>(it - values.begin()) * step};
}

}  // namespace vmolab::solver
