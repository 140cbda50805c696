#include "vmolab/sharp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vmolab/error.hpp"

namespace vmolab::sharp {

using dyadic::require_same_space;

MajorantFamily::MajorantFamily(const PartitionFiltration& filtration, std::vector<std::vector<double>> values)
    : n_min_(filtration.n_min()), values_(std::move(values)) {
  if (values_.size() != filtration.level_count()) throw InvalidArgument("majorant family needs one row per level");
  for (const auto& row : values_) {
    if (row.size() != filtration.atom_count()) throw InvalidArgument("majorant row size differs from atom count");
  }
}

MajorantFamily MajorantFamily::identity(const PartitionFiltration& filtration, const WeightedFunction& u) {
  require_same_space(filtration, u);
  std::vector<double> abs_u(u.values.size());
  std::transform(u.values.begin(), u.values.end(), abs_u.begin(), [](double x) { return std::abs(x); });
  return MajorantFamily(filtration, std::vector<std::vector<double>>(filtration.level_count(), abs_u));
}

double alpha_constant(double n0) {
  if (!(n0 > 0.0)) throw InvalidArgument("N0 must be positive");
  return 1.0 / (2.0 * n0);
}

namespace {

void require_triple(const PartitionFiltration& F, const FsTriple& t) {
  require_same_space(F, t.u);
  require_same_space(F, t.v);
  require_same_space(F, t.g);
  for (double x : t.g.values) {
    if (x < 0.0) throw InvalidArgument("g must be nonnegative");
  }
}

// Per-level cell averages of `values`.
std::vector<double> cell_averages(const PartitionFiltration& F, std::span<const double> values, int n) {
  std::vector<double> avg(F.cell_count(n), 0.0);
  const auto w = F.space()->weights();
  for (std::size_t a = 0; a < values.size(); ++a) avg[F.cell_of(n, a)] += values[a] * w[a];
  for (std::size_t c = 0; c < avg.size(); ++c) avg[c] /= F.cell_measure(n, c);
  return avg;
}

std::vector<double> cell_integrals(const PartitionFiltration& F, std::span<const double> values, int n) {
  std::vector<double> sum(F.cell_count(n), 0.0);
  const auto w = F.space()->weights();
  for (std::size_t a = 0; a < values.size(); ++a) sum[F.cell_of(n, a)] += values[a] * w[a];
  return sum;
}

void record_violation(PremiseCheck& check, int n, std::size_t c, double lhs, double rhs, double tolerance) {
  const double excess = lhs - rhs;
  if (excess > tolerance * (1.0 + std::abs(rhs))) {
    check.holds = false;
    if (!check.worst || excess > check.worst->violation) check.worst = CellRef{n, c, excess};
  }
}

// int_C |h - h_C| for every cell of level n.
std::vector<double> oscillation_integrals(const PartitionFiltration& F, std::span<const double> h, int n) {
  const auto avg = cell_averages(F, h, n);
  std::vector<double> dev(h.size());
  for (std::size_t a = 0; a < h.size(); ++a) dev[a] = std::abs(h[a] - avg[F.cell_of(n, a)]);
  return cell_integrals(F, dev, n);
}

std::vector<double> majorant_oscillation_integrals(const PartitionFiltration& F, const MajorantFamily& m, int n) {
  std::vector<double> row(F.atom_count());
  for (std::size_t a = 0; a < row.size(); ++a) row[a] = m.at(n, a);
  return oscillation_integrals(F, row, n);
}

}  // namespace

PremiseCheck check_premise_monotone(const PartitionFiltration& filtration, const FsTriple& t, double tolerance) {
  require_triple(filtration, t);
  for (std::size_t a = 0; a < t.u.size(); ++a) {
    if (t.u[a] < 0.0 || t.u[a] > t.v[a]) throw InvalidArgument("monotone premise requires 0 <= u <= v");
  }
  PremiseCheck check;
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    const auto v_avg = cell_averages(filtration, t.v.values, n);
    std::vector<double> excess(t.u.size());
    for (std::size_t a = 0; a < excess.size(); ++a) {
      excess[a] = std::max(0.0, t.u[a] - v_avg[filtration.cell_of(n, a)]);
    }
    const auto lhs = cell_integrals(filtration, excess, n);
    const auto rhs = cell_integrals(filtration, t.g.values, n);
    for (std::size_t c = 0; c < lhs.size(); ++c) record_violation(check, n, c, lhs[c], rhs[c], tolerance);
  }
  return check;
}

PremiseCheck check_premise_sharp(const PartitionFiltration& filtration, const FsTriple& t, const MajorantFamily& m,
                                 double tolerance) {
  require_triple(filtration, t);
  if (m.n_min() != filtration.n_min() || m.level_count() != filtration.level_count()) {
    throw InvalidArgument("majorant family does not match the filtration");
  }
  for (std::size_t a = 0; a < t.u.size(); ++a) {
    if (std::abs(t.u[a]) > t.v[a]) throw InvalidArgument("sharp premise requires |u| <= v");
  }
  PremiseCheck check;
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    for (std::size_t a = 0; a < t.u.size(); ++a) {
      const double uc = m.at(n, a);
      if (uc < std::abs(t.u[a]) || uc > t.v[a]) throw InvalidArgument("majorant must satisfy |u| <= u^C <= v");
    }
    const auto osc_u = oscillation_integrals(filtration, t.u.values, n);
    const auto osc_m = majorant_oscillation_integrals(filtration, m, n);
    const auto rhs = cell_integrals(filtration, t.g.values, n);
    for (std::size_t c = 0; c < rhs.size(); ++c) {
      record_violation(check, n, c, std::min(osc_u[c], osc_m[c]), rhs[c], tolerance);
    }
  }
  return check;
}

DistributionBound distribution_bound(const PartitionFiltration& filtration, const FsTriple& t, double lambda,
                                     DistributionCoefficient coefficient) {
  require_triple(filtration, t);
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  const double alpha = alpha_constant(filtration.regularity());
  const auto maximal = dyadic::dyadic_maximal(filtration, t.v);
  const auto w = filtration.space()->weights();
  double g_mass = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (maximal[a] > alpha * lambda) g_mass += t.g[a] * w[a];
  }
  const double c = coefficient == DistributionCoefficient::kGeneral ? 2.0 : 1.0;
  return DistributionBound{dyadic::level_set_measure(t.u, lambda), c / lambda * g_mass};
}

double truncation_threshold(const PartitionFiltration& filtration, const WeightedFunction& v) {
  require_same_space(filtration, v);
  const auto avg = cell_averages(filtration, v.values, filtration.n_min());
  return *std::max_element(avg.begin(), avg.end()) / alpha_constant(filtration.regularity());
}

double mean_oscillation(const PartitionFiltration& filtration, const WeightedFunction& u, int n, std::size_t cell) {
  require_same_space(filtration, u);
  const auto atoms = filtration.cell_atoms(n, cell);
  const auto w = filtration.space()->weights();
  const double measure = filtration.cell_measure(n, cell);
  double mean = 0.0;
  for (std::size_t a : atoms) mean += u[a] * w[a];
  mean /= measure;
  double osc = 0.0;
  for (std::size_t a : atoms) osc += std::abs(u[a] - mean) * w[a];
  return osc / measure;
}

WeightedFunction sharp_function(const PartitionFiltration& filtration, const WeightedFunction& u) {
  require_same_space(filtration, u);
  std::vector<double> out(u.size(), 0.0);
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    const auto osc = oscillation_integrals(filtration, u.values, n);
    for (std::size_t a = 0; a < out.size(); ++a) {
      const std::size_t c = filtration.cell_of(n, a);
      out[a] = std::max(out[a], osc[c] / filtration.cell_measure(n, c));
    }
  }
  return WeightedFunction(u.space, std::move(out));
}

double fs_constant(double p, double n0) {
  if (!(p > 1.0)) throw InvalidArgument("p must exceed 1");
  const double q = p / (p - 1.0);
  return 2.0 * std::pow(q, p) * std::pow(alpha_constant(n0), 1.0 - p);
}

double layer_cake_pnorm(const WeightedFunction& f, double p) {
  if (!(p > 0.0)) throw InvalidArgument("p must be positive");
  const auto w = f.space->weights();
  std::vector<std::pair<double, double>> level(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) level[a] = {std::pow(std::abs(f[a]), p), w[a]};
  std::sort(level.begin(), level.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  // Walk thresholds from the top: between consecutive distinct values t_{k-1} < t_k
  // the set {|f|^p >= t} has the measure of all atoms with value >= t_k.
  double total = 0.0;
  double mass = 0.0;
  std::size_t i = 0;
  while (i < level.size()) {
    const double t = level[i].first;
    while (i < level.size() && level[i].first == t) mass += level[i++].second;
    const double below = i < level.size() ? level[i].first : 0.0;
    total += (t - below) * mass;
  }
  return total;
}

NormBound fs_norm_bound(const PartitionFiltration& filtration, const FsTriple& t, double p) {
  require_triple(filtration, t);
  if (!(p > 1.0)) throw InvalidArgument("p must exceed 1");
  const double n0 = filtration.regularity();
  const double q = p / (p - 1.0);
  const double alpha = alpha_constant(n0);
  NormBound out;
  out.constant = fs_constant(p, n0);
  out.lhs = layer_cake_pnorm(t.u, p);
  out.rhs = out.constant * dyadic::lp_norm(t.g, p) * std::pow(dyadic::lp_norm(t.v, p), p - 1.0);
  const auto maximal = dyadic::dyadic_maximal(filtration, t.v);
  const auto w = filtration.space()->weights();
  double s = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) s += t.g[a] * std::pow(maximal[a], p - 1.0) * w[a];
  out.chebyshev_rhs = 2.0 * q * std::pow(alpha, 1.0 - p) * s;
  return out;
}

WeightedFunction minimal_monotone_g(const PartitionFiltration& filtration, const WeightedFunction& u,
                                    const WeightedFunction& v) {
  require_same_space(filtration, u);
  require_same_space(filtration, v);
  std::vector<double> g(u.size(), 0.0);
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    const auto v_avg = cell_averages(filtration, v.values, n);
    std::vector<double> excess(u.size());
    for (std::size_t a = 0; a < u.size(); ++a) excess[a] = std::max(0.0, u[a] - v_avg[filtration.cell_of(n, a)]);
    const auto need = cell_integrals(filtration, excess, n);
    for (std::size_t a = 0; a < u.size(); ++a) {
      const std::size_t c = filtration.cell_of(n, a);
      g[a] = std::max(g[a], need[c] / filtration.cell_measure(n, c));
    }
  }
  return WeightedFunction(u.space, std::move(g));
}

WeightedFunction minimal_sharp_g(const PartitionFiltration& filtration, const WeightedFunction& u,
                                 const MajorantFamily& m) {
  require_same_space(filtration, u);
  std::vector<double> g(u.size(), 0.0);
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    const auto osc_u = oscillation_integrals(filtration, u.values, n);
    const auto osc_m = majorant_oscillation_integrals(filtration, m, n);
    for (std::size_t a = 0; a < u.size(); ++a) {
      const std::size_t c = filtration.cell_of(n, a);
      g[a] = std::max(g[a], std::min(osc_u[c], osc_m[c]) / filtration.cell_measure(n, c));
    }
  }
  return WeightedFunction(u.space, std::move(g));
}

namespace {

// Nonnegative sample with zeros, moderate values, and occasional spikes.
std::vector<double> random_nonnegative(std::size_t atoms, std::size_t support, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> body(0.0, 1.0);
  std::vector<double> v(atoms, 0.0);
  for (std::size_t a = 0; a < std::min(atoms, support); ++a) {
    const double r = unit(rng);
    if (r < 0.25) {
      v[a] = 0.0;
    } else if (r < 0.9) {
      v[a] = body(rng);
    } else {
      v[a] = 10.0 * body(rng);
    }
  }
  return v;
}

WeightedFunction inflate(WeightedFunction g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> factor(1.0, 1.5);
  for (double& x : g.values) x *= factor(rng);
  return g;
}

}  // namespace

GeneratedTriple make_monotone_triple(const PartitionFiltration& filtration, std::size_t support_atoms,
                                     std::mt19937_64& rng) {
  const auto& space = filtration.space();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto v_values = random_nonnegative(space->size(), support_atoms, rng);
  std::vector<double> u_values(v_values.size());
  for (std::size_t a = 0; a < u_values.size(); ++a) u_values[a] = unit(rng) * v_values[a];
  WeightedFunction u(space, std::move(u_values));
  WeightedFunction v(space, std::move(v_values));
  auto g = inflate(minimal_monotone_g(filtration, u, v), rng);
  return GeneratedTriple{FsTriple{std::move(u), std::move(v), std::move(g)}, std::nullopt};
}

GeneratedTriple make_sharp_triple(const PartitionFiltration& filtration, std::size_t support_atoms, bool nonnegative,
                                  std::mt19937_64& rng) {
  const auto& space = filtration.space();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sign(-1.0, 1.0);
  auto v_values = random_nonnegative(space->size(), support_atoms, rng);
  std::vector<double> u_values(v_values.size());
  for (std::size_t a = 0; a < u_values.size(); ++a) {
    u_values[a] = (nonnegative ? unit(rng) : sign(rng)) * v_values[a];
  }
  std::vector<std::vector<double>> majorant(filtration.level_count(), std::vector<double>(space->size()));
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    std::vector<double> theta(filtration.cell_count(n));
    for (double& th : theta) {
      const double r = unit(rng);
      th = r < 0.3 ? 0.0 : (r < 0.6 ? 1.0 : unit(rng));
    }
    auto& row = majorant[static_cast<std::size_t>(n - filtration.n_min())];
    for (std::size_t a = 0; a < row.size(); ++a) {
      const double lo = std::abs(u_values[a]);
      row[a] = std::min(v_values[a], lo + theta[filtration.cell_of(n, a)] * (v_values[a] - lo));
    }
  }
  WeightedFunction u(space, std::move(u_values));
  WeightedFunction v(space, std::move(v_values));
  MajorantFamily m(filtration, std::move(majorant));
  auto g = inflate(minimal_sharp_g(filtration, u, m), rng);
  return GeneratedTriple{FsTriple{std::move(u), std::move(v), std::move(g)}, std::move(m)};
}

std::string_view to_string(FsMode mode) {
  switch (mode) {
    case FsMode::kMonotoneDist:
      return "monotone-dist";
    case FsMode::kMonotoneNorm:
      return "monotone-norm";
    case FsMode::kSharpDist:
      return "sharp-dist";
    case FsMode::kSharpPosDist:
      return "sharp-pos-dist";
    case FsMode::kSharpNorm:
      return "sharp-norm";
  }
  return "unknown";
}

namespace {

struct TrialShape {
  int dimension;
  int depth;
};

constexpr std::array<TrialShape, 6> kTrialShapes{{{1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 2}, {2, 3}}};

TrialShape trial_shape(int trial) { return kTrialShapes[static_cast<std::size_t>(trial) % kTrialShapes.size()]; }

}  // namespace

PartitionFiltration trial_filtration(int trial, int pad_levels) {
  if (trial < 0) throw InvalidArgument("trial index must be nonnegative");
  const auto shape = trial_shape(trial);
  return dyadic::pad_with_zero_levels(dyadic::build_dyadic_filtration(shape.dimension, shape.depth), pad_levels);
}

std::vector<double> sample_lambdas(const WeightedFunction& u, double threshold, int count, std::mt19937_64& rng) {
  if (count < 0) throw InvalidArgument("lambda count must be nonnegative");
  double top = 0.0;
  std::vector<double> above;
  for (double x : u.values) {
    top = std::max(top, std::abs(x));
    if (std::abs(x) > threshold) above.push_back(std::abs(x));
  }
  const double lo = threshold > 0.0 ? threshold : std::max(top * 1e-6, 1e-300);
  const double hi = std::max(1.2 * top, 2.0 * lo);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int log_count = above.empty() ? count : count / 2;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < log_count; ++k) out.push_back(lo * std::pow(hi / lo, unit(rng)));
  if (!above.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, above.size() - 1);
    for (int k = log_count; k < count; ++k) out.push_back(above[pick(rng)]);
  }
  return out;
}

std::vector<FsRow> fs_trial(std::uint64_t seed, int trial, std::span<const double> ps, int pad_levels, int lambdas) {
  const auto shape = trial_shape(trial);
  const auto support = std::size_t{1} << (shape.dimension * shape.depth);
  const auto F = trial_filtration(trial, pad_levels);
  const double n0 = F.regularity();
  std::seed_seq seq{seed, static_cast<std::uint64_t>(trial)};
  std::mt19937_64 rng(seq);
  std::vector<FsRow> rows;

  auto add_dist = [&](FsMode mode, const FsTriple& t, DistributionCoefficient coef) {
    const double threshold = truncation_threshold(F, t.v);
    for (double lambda : sample_lambdas(t.u, threshold, lambdas, rng)) {
      const auto b = distribution_bound(F, t, lambda, coef);
      rows.push_back(FsRow{trial, mode, std::nullopt, n0, lambda, b.lhs, b.rhs, b.slack() >= -1e-12});
    }
  };
  auto add_norm = [&](FsMode mode, const FsTriple& t) {
    for (double p : ps) {
      const auto b = fs_norm_bound(F, t, p);
      rows.push_back(FsRow{trial, mode, p, n0, std::nullopt, b.lhs, b.rhs, b.lhs <= b.rhs * (1.0 + 1e-12)});
    }
  };

  const auto mono = make_monotone_triple(F, support, rng);
  if (!check_premise_monotone(F, mono.triple).holds) throw std::logic_error("generated monotone triple fails its premise");
  add_dist(FsMode::kMonotoneDist, mono.triple, DistributionCoefficient::kGeneral);
  add_norm(FsMode::kMonotoneNorm, mono.triple);

  const auto sharp = make_sharp_triple(F, support, false, rng);
  if (!check_premise_sharp(F, sharp.triple, *sharp.majorants).holds) {
    throw std::logic_error("generated sharp triple fails its premise");
  }
  add_dist(FsMode::kSharpDist, sharp.triple, DistributionCoefficient::kGeneral);
  add_norm(FsMode::kSharpNorm, sharp.triple);

  const auto pos = make_sharp_triple(F, support, true, rng);
  if (!check_premise_sharp(F, pos.triple, *pos.majorants).holds) {
    throw std::logic_error("generated nonnegative sharp triple fails its premise");
  }
  add_dist(FsMode::kSharpPosDist, pos.triple, DistributionCoefficient::kNonnegative);
  return rows;
}

}  // namespace vmolab::sharp
