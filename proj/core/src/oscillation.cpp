#include "vmolab/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "vmolab/error.hpp"
#include "vmolab/parallel.hpp"

namespace vmolab::oscillation {

DirectionMap::DirectionMap(Eigen::MatrixXd r, Eigen::VectorXd s) : rotation(std::move(r)), shift(std::move(s)) {
  if (rotation.rows() != rotation.cols() || rotation.rows() < 1) throw InvalidArgument("rotation must be square");
  if (shift.size() != rotation.rows()) throw InvalidArgument("shift dimension does not match rotation");
  const Eigen::MatrixXd gram = rotation * rotation.transpose();
  if ((gram - Eigen::MatrixXd::Identity(rotation.rows(), rotation.cols())).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("direction map is not a rigid motion");
  }
}

DirectionMap DirectionMap::identity(int dim) {
  return DirectionMap(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim));
}

DirectionMap DirectionMap::from_angle(double theta) {
  auto snap = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  const double c = snap(std::cos(theta));
  const double s = snap(std::sin(theta));
  Eigen::MatrixXd r(2, 2);
  r << c, s, -s, c;
  return DirectionMap(r, Eigen::VectorXd::Zero(2));
}

DirectionMap DirectionMap::from_direction(const Eigen::VectorXd& e) {
  const auto d = e.size();
  if (d < 1) throw InvalidArgument("direction must be nonempty");
  if (std::abs(e.norm() - 1.0) > 1e-12) throw InvalidArgument("direction must be a unit vector");
  Eigen::MatrixXd r(d, d);
  r.row(0) = e.transpose();
  Eigen::Index filled = 1;
  for (Eigen::Index k = 0; k < d && filled < d; ++k) {
    Eigen::VectorXd candidate = Eigen::VectorXd::Unit(d, k);
    for (Eigen::Index j = 0; j < filled; ++j) candidate -= r.row(j).dot(candidate) * r.row(j).transpose();
    for (Eigen::Index j = 0; j < filled; ++j) candidate -= r.row(j).dot(candidate) * r.row(j).transpose();
    const double norm = candidate.norm();
    if (norm < 1e-6) continue;
    r.row(filled++) = (candidate / norm).transpose();
  }
  return DirectionMap(r, Eigen::VectorXd::Zero(d));
}

double DirectionMap::first(std::span<const double> x) const {
  double t = shift(0);
  for (Eigen::Index k = 0; k < rotation.cols(); ++k) t += rotation(0, k) * x[static_cast<std::size_t>(k)];
  return t;
}

DirectionMap DirectionMap::inverse() const {
  return DirectionMap(rotation.transpose(), -(rotation.transpose() * shift));
}

Region Region::ball(std::span<const double> center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
  if (center.size() > GridShape::kMaxDim) throw InvalidArgument("ball center has too many coordinates");
  Region r;
  r.kind = Kind::kBall;
  std::copy(center.begin(), center.end(), r.anchor.begin());
  r.size = radius;
  return r;
}

Region Region::square(std::span<const double> lo, double side) {
  if (!(side > 0.0)) throw InvalidArgument("square side must be positive");
  if (lo.size() > GridShape::kMaxDim) throw InvalidArgument("square corner has too many coordinates");
  Region r;
  r.kind = Kind::kSquare;
  std::copy(lo.begin(), lo.end(), r.anchor.begin());
  r.size = side;
  return r;
}

Region Region::from_window(const GridShape& shape, const fields::Window& window) {
  std::array<double, GridShape::kMaxDim> lo{};
  for (int k = 0; k < shape.dim(); ++k) lo[static_cast<std::size_t>(k)] = window.lo[static_cast<std::size_t>(k)] * shape.h();
  return square(std::span<const double>(lo.data(), static_cast<std::size_t>(shape.dim())), window.side * shape.h());
}

std::array<double, GridShape::kMaxDim> Region::center(int dim) const {
  if (kind == Kind::kBall) return anchor;
  auto c = anchor;
  for (int k = 0; k < dim; ++k) c[static_cast<std::size_t>(k)] += 0.5 * size;
  return c;
}

std::vector<std::size_t> region_cells(const GridShape& shape, const Region& region) {
  const int d = shape.dim();
  const double h = shape.h();
  std::array<int, GridShape::kMaxDim> lo{};
  std::array<int, GridShape::kMaxDim> hi{};
  for (int k = 0; k < d; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    double a = region.anchor[kk];
    double b = region.anchor[kk] + region.size;
    if (region.kind == Region::Kind::kBall) {
      a = region.anchor[kk] - region.size;
      b = region.anchor[kk] + region.size;
    }
    // Centers (i + 1/2) h in [a, b).
    lo[kk] = std::max(0, static_cast<int>(std::ceil(a / h - 0.5)));
    hi[kk] = std::min(shape.n() - 1, static_cast<int>(std::ceil(b / h - 0.5)) - 1);
    if (lo[kk] > hi[kk]) return {};
  }
  std::vector<std::size_t> out;
  std::array<int, GridShape::kMaxDim> idx = lo;
  const double r2 = region.size * region.size;
  while (true) {
    bool inside = true;
    if (region.kind == Region::Kind::kBall) {
      double dist2 = 0.0;
      for (int k = 0; k < d; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const double x = (idx[kk] + 0.5) * h - region.anchor[kk];
        dist2 += x * x;
      }
      inside = dist2 < r2;
    }
    if (inside) out.push_back(shape.flatten(idx));
    int k = d - 1;
    for (; k >= 0; --k) {
      const auto kk = static_cast<std::size_t>(k);
      if (++idx[kk] <= hi[kk]) break;
      idx[kk] = lo[kk];
    }
    if (k < 0) break;
  }
  return out;
}

std::optional<std::size_t> OneDProfile::bin_of(double t) const {
  const double k = std::floor((t - t0) / width + 0.5);
  if (k < 0.0 || k >= static_cast<double>(bins())) return std::nullopt;
  return static_cast<std::size_t>(k);
}

double projected_bin_width(const GridShape& shape, const DirectionMap& psi) {
  if (psi.dim() != shape.dim()) throw InvalidArgument("direction map dimension does not match the grid");
  return shape.h() * psi.rotation.row(0).cwiseAbs().maxCoeff();
}

namespace {

std::vector<std::size_t> nonempty_cells(const GridShape& shape, const Region& region) {
  auto cells = region_cells(shape, region);
  if (cells.empty()) throw InvalidArgument("region contains no grid cells");
  return cells;
}

double first_coordinate(const GridShape& shape, const DirectionMap& psi, std::size_t cell) {
  const auto x = shape.center(cell);
  return psi.first(std::span<const double>(x.data(), static_cast<std::size_t>(shape.dim())));
}

OneDProfile slab_average_on(const FieldView& field, const std::vector<std::size_t>& cells, const DirectionMap& psi) {
  const auto& shape = field.shape;
  std::vector<double> t(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) t[k] = first_coordinate(shape, psi, cells[k]);
  const auto [tmin, tmax] = std::minmax_element(t.begin(), t.end());
  OneDProfile p;
  p.t0 = *tmin;
  p.width = projected_bin_width(shape, psi);
  p.components = field.components;
  const auto bins = static_cast<std::size_t>(std::floor((*tmax - *tmin) / p.width + 0.5)) + 1;
  const auto comps = static_cast<std::size_t>(field.components);
  p.values.assign(bins * comps, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto b = *p.bin_of(t[k]);
    const auto s = field.at(cells[k]);
    for (std::size_t c = 0; c < comps; ++c) p.values[b * comps + c] += s[c];
    ++count[b];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    for (std::size_t c = 0; c < comps; ++c) p.values[b * comps + c] /= static_cast<double>(count[b]);
  }
  return p;
}

OscillationReport oscillation_on(const FieldView& field, const Region& region, const std::vector<std::size_t>& cells,
                                 const DirectionMap& psi, const OneDProfile& profile) {
  if (profile.components != field.components) throw InvalidArgument("profile and field have different components");
  const auto& shape = field.shape;
  const auto comps = static_cast<std::size_t>(field.components);
  // Neumaier summation: large squares add millions of terms.
  double frob = 0.0;
  double frob_c = 0.0;
  double maxe = 0.0;
  for (const auto cell : cells) {
    const auto bin = profile.bin_of(first_coordinate(shape, psi, cell));
    if (!bin) throw InvalidArgument("profile bins do not cover the region");
    const auto a = field.at(cell);
    const auto abar = profile.at(*bin);
    double sq = 0.0;
    double mx = 0.0;
    for (std::size_t c = 0; c < comps; ++c) {
      const double diff = std::abs(a[c] - abar[c]);
      sq += diff * diff;
      mx = std::max(mx, diff);
    }
    const double term = std::sqrt(sq);
    const double t = frob + term;
    frob_c += std::abs(frob) >= term ? (frob - t) + term : (term - t) + frob;
    frob = t;
    maxe += mx;
  }
  frob += frob_c;
  const double vol = shape.cell_volume();
  OscillationReport r{region, psi, profile, frob * vol, static_cast<double>(cells.size()) * vol, 0.0, 0.0};
  r.value = r.integral / r.measure;
  r.value_max_entry = maxe * vol / r.measure;
  return r;
}

}  // namespace

OneDProfile slab_average_profile(const FieldView& field, const Region& region, const DirectionMap& psi) {
  return slab_average_on(field, nonempty_cells(field.shape, region), psi);
}

OscillationReport oscillation(const FieldView& field, const Region& region, const DirectionMap& psi,
                              const OneDProfile& profile) {
  if (psi.dim() != field.shape.dim()) throw InvalidArgument("direction map dimension does not match the grid");
  return oscillation_on(field, region, nonempty_cells(field.shape, region), psi, profile);
}

OscillationReport best_direction(const FieldView& field, const Region& region,
                                 std::span<const DirectionMap> directions) {
  if (directions.empty()) throw InvalidArgument("direction grid is empty");
  const auto cells = nonempty_cells(field.shape, region);
  std::optional<OscillationReport> best;
  for (const auto& psi : directions) {
    if (psi.dim() != field.shape.dim()) throw InvalidArgument("direction map dimension does not match the grid");
    auto r = oscillation_on(field, region, cells, psi, slab_average_on(field, cells, psi));
    if (!best || r.value < best->value - 1e-12 * std::max(best->value, 1e-300)) best = std::move(r);
  }
  return *best;
}

std::vector<DirectionMap> uniform_direction_grid(int dim, int count) {
  if (count < 1) throw InvalidArgument("direction count must be positive");
  std::vector<DirectionMap> out;
  if (dim == 1) {
    out.push_back(DirectionMap::identity(1));
    return out;
  }
  if (dim == 2) {
    for (int k = 0; k < count; ++k) out.push_back(DirectionMap::from_angle(std::numbers::pi * k / count));
    return out;
  }
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (k + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Eigen::Vector3d e(r * std::cos(golden * k), r * std::sin(golden * k), z);
      out.push_back(DirectionMap::from_direction(e.normalized()));
    }
    return out;
  }
  throw InvalidArgument("direction grids are provided for d <= 3");
}

std::vector<Region> make_ball_sample(const GridShape& shape, double r0, int random_per_decade, std::uint64_t seed) {
  if (!(r0 > 0.0)) throw InvalidArgument("R0 must be positive");
  if (random_per_decade < 0) throw InvalidArgument("random ball count must be nonnegative");
  std::vector<Region> out;
  if (std::has_single_bit(static_cast<unsigned>(shape.n()))) {
    for (const auto& w : fields::dyadic_windows(shape, std::min(4, shape.n()))) {
      if (0.5 * w.side * shape.h() < r0) out.push_back(Region::from_window(shape, w));
    }
  }
  const auto d = static_cast<std::size_t>(shape.dim());
  const double rmin = 2.0 * shape.h();
  for (int decade = 0; std::pow(10.0, -decade) > rmin; ++decade) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(decade)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < random_per_decade; ++k) {
      const double radius = std::pow(10.0, -decade - unit(rng));
      std::array<double, GridShape::kMaxDim> c{};
      for (std::size_t a = 0; a < d; ++a) c[a] = unit(rng);
      if (radius < r0 && radius >= rmin) out.push_back(Region::ball(std::span<const double>(c.data(), d), radius));
    }
  }
  return out;
}

GammaEstimate gamma_profile(const FieldView& field, std::span<const Region> balls,
                            std::span<const DirectionMap> directions) {
  GammaEstimate g;
  std::vector<std::optional<OscillationReport>> slots(balls.size());
  parallel_for(balls.size(), [&](std::size_t k) { slots[k] = best_direction(field, balls[k], directions); });
  g.balls.reserve(balls.size());
  for (auto& s : slots) {
    g.gamma = std::max(g.gamma, s->value);
    g.balls.push_back(std::move(*s));
  }
  return g;
}

std::optional<int> tau_index(const Region& square, double kappa) {
  if (!(kappa >= 4.0)) throw InvalidArgument("kappa must be >= 4");
  if (square.kind != Region::Kind::kSquare) throw InvalidArgument("tau_index needs a square region");
  const double ax = square.anchor[0];
  const double ay = square.anchor[1];
  const double s = square.size;
  if (ax + s <= 0.0 || ay + s <= 0.0) return std::nullopt;
  double k = 1.0;
  for (int i = 0; i < 4096 && k > 0.0; ++i, k /= kappa) {
    const bool meets = std::max(ax, 0.5 * k) < std::min(ax + s, k) && std::max(ay, 0.5 * k) < std::min(ay + s, k);
    if (meets) return i;
    if (k <= std::max(ax, ay)) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

Interval iadd(Interval a, Interval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
Interval isub(Interval a, Interval b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }
// Both operands nonnegative.
Interval imul(Interval a, Interval b) { return {down(a.lo * b.lo), up(a.hi * b.hi)}; }
// Both operands positive.
Interval idiv(Interval a, Interval b) { return {down(a.lo / b.hi), up(a.hi / b.lo)}; }
Interval point(double x) { return {x, x}; }

// Length of (a, b) cap (c, d), all endpoints enclosed.
Interval overlap(Interval a, Interval b, Interval c, Interval d) {
  const Interval lo{std::max(a.lo, c.lo), std::max(a.hi, c.hi)};
  const Interval hi{std::min(b.lo, d.lo), std::min(b.hi, d.hi)};
  const Interval len = isub(hi, lo);
  return {std::max(0.0, len.lo), std::max(0.0, len.hi)};
}

}  // namespace

TailSumReport tail_sum_check(const Region& square, double kappa, int tau) {
  if (!(kappa >= 4.0)) throw InvalidArgument("kappa must be >= 4");
  if (square.kind != Region::Kind::kSquare) throw InvalidArgument("tail sum needs a square region");
  if (tau < 0) throw InvalidArgument("tau must be nonnegative");
  const Interval ax = point(square.anchor[0]);
  const Interval ay = point(square.anchor[1]);
  const Interval s = point(square.size);
  const Interval bx = iadd(ax, s);
  const Interval by = iadd(ay, s);
  const Interval area = imul(s, s);
  const Interval kap = point(kappa);
  const Interval kap2 = imul(kap, kap);
  const Interval half = point(0.5);

  TailSumReport r;
  r.bound = idiv(imul(point(4.0), area), isub(kap2, point(1.0)));

  Interval k_tau = point(1.0);
  for (int i = 0; i < tau; ++i) k_tau = idiv(k_tau, kap);
  // 4 kappa^(2 tau - 2 i) |Q|, updated by dividing by kappa^2 per step.
  Interval termwise_bound = imul(point(4.0), area);

  Interval k = k_tau;
  Interval sum = point(0.0);
  const bool corner = square.anchor[0] <= 0.0 && square.anchor[1] <= 0.0;
  const double stop = std::max(square.anchor[0], square.anchor[1]);
  const double inner = std::min(bx.lo, by.lo);
  for (int i = tau + 1; i < tau + 4096; ++i) {
    k = idiv(k, kap);
    termwise_bound = idiv(termwise_bound, kap2);
    if (!corner && k.hi <= stop) break;
    if (corner && k.hi <= inner) {
      // Q_j lies inside Q for every j >= i: add sum_j kappa^-2j / 4 in closed form.
      const Interval full = idiv(imul(k, k), imul(point(4.0), isub(point(1.0), idiv(point(1.0), kap2))));
      sum = iadd(sum, full);
      r.termwise = r.termwise && imul(imul(k, k), point(0.25)).hi <= termwise_bound.lo;
      break;
    }
    const Interval kh = imul(k, half);
    const Interval term = imul(overlap(ax, bx, kh, k), overlap(ay, by, kh, k));
    if (term.hi > 0.0) {
      r.termwise = r.termwise && term.hi <= termwise_bound.lo;
      if (overlap(ax, bx, kh, k).lo > 0.0 && overlap(ay, by, kh, k).lo > 0.0) {
        r.geometry = r.geometry && square.size >= k_tau.hi / 4.0;
      }
    }
    sum = iadd(sum, term);
    ++r.terms;
  }
  r.tail = sum;
  r.holds = r.tail.hi <= r.bound.lo;
  return r;
}

int resolved_terms(double kappa, int resolution) {
  if (!(kappa >= 4.0)) throw InvalidArgument("kappa must be >= 4");
  if (resolution < 1) throw InvalidArgument("resolution must be positive");
  const double h = 1.0 / resolution;
  int r = 0;
  while (std::pow(kappa, -r) / 2.0 >= 2.0 * h) ++r;
  return r;
}

ExampleBoundReport verify_example_bound(const fields::ExampleParams& params, int resolution, int min_side_cells,
                                        double tolerance) {
  auto p = params;
  fields::validate(p);
  p.n_terms = std::min(p.n_terms, resolved_terms(p.kappa, resolution));
  if (p.n_terms < 1) throw InvalidArgument("resolution too coarse to resolve any example term");
  return verify_example_bound(p, fields::example_field(p, resolution), min_side_cells, tolerance);
}

ExampleBoundReport verify_example_bound(const fields::ExampleParams& params, const fields::ScalarField& field,
                                        int min_side_cells, double tolerance) {
  fields::validate(params);
  const GridShape& shape = field.shape;
  if (shape.dim() != 2) throw InvalidArgument("example bound needs a 2-D field");
  if (params.n_terms > resolved_terms(params.kappa, shape.n())) {
    throw InvalidArgument("resolution too coarse for the requested number of example terms");
  }
  const int n = shape.n();
  const double h = shape.h();
  const double kappa = params.kappa;
  const int nt = params.n_terms;

  // zeta(kappa^t y_j) and f(kappa^t x_j) on the grid, per term.
  std::vector<std::vector<double>> zeta(static_cast<std::size_t>(nt), std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<std::vector<double>> prof(static_cast<std::size_t>(nt), std::vector<double>(static_cast<std::size_t>(n)));
  ExampleBoundReport report;
  for (int t = 0; t < nt; ++t) {
    const double scale = std::pow(kappa, t);
    for (int j = 0; j < n; ++j) {
      const double y = (j + 0.5) * h;
      zeta[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] = fields::zeta_bump(scale * y, params.epsilon);
      prof[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] = params.profile(scale * y);
    }
    report.measured_bmo =
        std::max(report.measured_bmo, fields::dyadic_bmo_1d(zeta[static_cast<std::size_t>(t)], min_side_cells));
  }
  report.gamma_bound = report.measured_bmo + 4.0 / (kappa * kappa - 1.0);

  const auto view = field.view();
  const auto windows = fields::dyadic_windows(shape, min_side_cells);
  report.squares.resize(windows.size());
  const DirectionMap along_x = DirectionMap::identity(2);
  const DirectionMap along_y = DirectionMap::from_angle(std::numbers::pi / 2.0);
  const double vol = shape.cell_volume();

  parallel_for(windows.size(), [&](std::size_t w) {
    const auto& win = windows[w];
    SquareBound& sq = report.squares[w];
    sq.window = win;
    const Region region = Region::from_window(shape, win);
    sq.measure = static_cast<double>(win.side) * win.side * vol;
    auto tau = tau_index(region, kappa);
    if (tau && *tau >= nt) tau.reset();
    sq.tau = tau;

    OneDProfile profile;
    profile.width = h;
    profile.values.assign(static_cast<std::size_t>(win.side), 0.0);
    if (!tau) {
      profile.t0 = (win.lo[0] + 0.5) * h;
      sq.m = oscillation(view, region, along_x, profile).integral;
      sq.discrete_pass = sq.m == 0.0;
      sq.gamma_pass = sq.m / sq.measure <= report.gamma_bound * (1.0 + tolerance);
      sq.tail_check.holds = true;
      return;
    }
    const auto t = static_cast<std::size_t>(*tau);
    // Even tau: abar = f(kappa^tau x) zeta_bar, zeta averaged over J. Odd tau swaps the axes.
    const int along = (*tau % 2 == 0) ? 0 : 1;
    const int across = 1 - along;
    const auto lo_along = static_cast<std::size_t>(win.lo[static_cast<std::size_t>(along)]);
    const auto lo_across = static_cast<std::size_t>(win.lo[static_cast<std::size_t>(across)]);
    const auto side = static_cast<std::size_t>(win.side);
    double zbar = 0.0;
    for (std::size_t j = 0; j < side; ++j) zbar += zeta[t][lo_across + j];
    zbar /= static_cast<double>(side);
    double int_f = 0.0;
    double int_z = 0.0;
    for (std::size_t j = 0; j < side; ++j) {
      profile.values[j] = prof[t][lo_along + j] * zbar;
      int_f += std::abs(prof[t][lo_along + j]) * h;
      int_z += std::abs(zeta[t][lo_across + j] - zbar) * h;
    }
    profile.t0 = (static_cast<double>(lo_along) + 0.5) * h;
    sq.m = oscillation(view, region, along == 0 ? along_x : along_y, profile).integral;
    sq.first_term = int_f * int_z;

    std::size_t tail_cells = 0;
    for (std::size_t a = 0; a < side; ++a) {
      const double x = (static_cast<double>(win.lo[0]) + a + 0.5) * h;
      for (std::size_t b = 0; b < side; ++b) {
        const double y = (static_cast<double>(win.lo[1]) + b + 0.5) * h;
        for (int i = *tau + 1; i < nt; ++i) {
          const double k = std::pow(kappa, -i);
          if (x > 0.5 * k && x < k && y > 0.5 * k && y < k) {
            ++tail_cells;
            break;
          }
        }
      }
    }
    sq.tail = static_cast<double>(tail_cells) * vol;
    sq.tail_check = tail_sum_check(region, kappa, *tau);
    const double rhs = sq.first_term + sq.tail;
    sq.discrete_pass = sq.m <= rhs * (1.0 + 1e-10) + 1e-300;
    sq.gamma_pass = sq.m / sq.measure <= report.gamma_bound * (1.0 + tolerance);
  });

  for (const auto& sq : report.squares) {
    report.max_ratio = std::max(report.max_ratio, sq.m / sq.measure);
    report.all_pass = report.all_pass && sq.discrete_pass && sq.gamma_pass && sq.tail_check.holds &&
                      sq.tail_check.termwise && sq.tail_check.geometry;
  }
  return report;
}

}  // namespace vmolab::oscillation
