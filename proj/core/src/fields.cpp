#include "vmolab/fields.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include "vmolab/error.hpp"
#include "vmolab/parallel.hpp"

namespace vmolab::fields {

double logarithm_bmo_seed(double x) { return std::log(std::min(std::abs(x), 1.0)); }

double zeta_bump(double x, double epsilon) {
  const double t = 4.0 * x - 3.0;
  if (std::abs(t) >= 1.0) return 0.0;
  if (t == 0.0) return 0.0;
  return std::sin(epsilon * logarithm_bmo_seed(t));
}

SupportProfile SupportProfile::indicator() { return SupportProfile{}; }

SupportProfile SupportProfile::square_wave(int periods) {
  if (periods < 1) throw InvalidArgument("square wave needs at least one period");
  SupportProfile p;
  p.kind_ = ProfileKind::kSquareWave;
  p.periods_ = periods;
  return p;
}

SupportProfile SupportProfile::random_step(int steps, std::uint64_t seed) {
  if (steps < 1) throw InvalidArgument("random step profile needs at least one step");
  SupportProfile p;
  p.kind_ = ProfileKind::kRandomStep;
  p.seed_ = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  p.steps_.resize(static_cast<std::size_t>(steps));
  for (double& s : p.steps_) s = value(rng);
  return p;
}

double SupportProfile::operator()(double x) const {
  if (!(x > 0.5 && x < 1.0)) return 0.0;
  const double t = 2.0 * x - 1.0;  // (0, 1)
  switch (kind_) {
    case ProfileKind::kIndicator:
      return 1.0;
    case ProfileKind::kSquareWave: {
      const auto k = static_cast<long>(std::floor(t * 2.0 * periods_));
      return k % 2 == 0 ? 1.0 : -1.0;
    }
    case ProfileKind::kRandomStep: {
      const auto k = std::min(steps_.size() - 1, static_cast<std::size_t>(t * static_cast<double>(steps_.size())));
      return steps_[k];
    }
  }
  return 0.0;
}

nlohmann::json SupportProfile::to_json() const {
  switch (kind_) {
    case ProfileKind::kIndicator:
      return {{"kind", "indicator"}};
    case ProfileKind::kSquareWave:
      return {{"kind", "square_wave"}, {"periods", periods_}};
    case ProfileKind::kRandomStep:
      return {{"kind", "random_step"}, {"steps", steps_.size()}, {"seed", seed_}};
  }
  return {};
}

SupportProfile SupportProfile::from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "indicator") return indicator();
  if (kind == "square_wave") return square_wave(j.at("periods").get<int>());
  if (kind == "random_step") return random_step(j.at("steps").get<int>(), j.at("seed").get<std::uint64_t>());
  throw InvalidArgument("unknown profile kind '" + kind + "'");
}

nlohmann::json ExampleParams::to_json() const {
  return {{"epsilon", epsilon}, {"kappa", kappa}, {"n_terms", n_terms}, {"profile", profile.to_json()}};
}

void validate(const ExampleParams& params) {
  if (!(params.kappa >= 4.0)) throw InvalidArgument("kappa must be >= 4");
  if (!(params.epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (params.n_terms < 1) throw InvalidArgument("n_terms must be >= 1");
}

double example_term(const ExampleParams& params, int r, double x, double y) {
  const double s = std::pow(params.kappa, r);
  const double sx = s * x;
  const double sy = s * y;
  if (!(sx > 0.5 && sx < 1.0 && sy > 0.5 && sy < 1.0)) return 0.0;
  if (r % 2 == 0) return params.profile(sx) * zeta_bump(sy, params.epsilon);
  return params.profile(sy) * zeta_bump(sx, params.epsilon);
}

double example_value(const ExampleParams& params, double x, double y) {
  double sum = 0.0;
  for (int r = 0; r < params.n_terms; ++r) sum += example_term(params, r, x, y);
  return sum;
}

ScalarField example_field(const ExampleParams& params, int resolution) {
  validate(params);
  GridShape shape(2, resolution);
  ScalarField field{shape, std::vector<double>(shape.size(), 0.0), params.to_json()};
  const double h = shape.h();
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t row) {
    const double x = (static_cast<double>(row) + 0.5) * h;
    for (int col = 0; col < resolution; ++col) {
      const double y = (col + 0.5) * h;
      field.values[row * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(col)] =
          example_value(params, x, y);
    }
  });
  return field;
}

namespace {

bool is_power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

template <typename Fn>
void for_each_in_window(const GridShape& shape, const Window& w, Fn&& fn) {
  const int d = shape.dim();
  std::array<int, GridShape::kMaxDim> idx = w.lo;
  while (true) {
    fn(shape.flatten(idx));
    int k = d - 1;
    while (k >= 0) {
      auto& i = idx[static_cast<std::size_t>(k)];
      if (++i < w.lo[static_cast<std::size_t>(k)] + w.side) break;
      i = w.lo[static_cast<std::size_t>(k)];
      --k;
    }
    if (k < 0) return;
  }
}

void require_window_in_grid(const GridShape& shape, const Window& w) {
  for (int k = 0; k < shape.dim(); ++k) {
    const int lo = w.lo[static_cast<std::size_t>(k)];
    if (lo < 0 || w.side < 1 || lo + w.side > shape.n()) throw InvalidArgument("window lies outside the grid");
  }
}

}  // namespace

std::vector<Window> dyadic_windows(const GridShape& shape, int min_side_cells) {
  if (!is_power_of_two(shape.n())) throw InvalidArgument("dyadic windows need a power-of-two resolution");
  std::vector<Window> out;
  for (int side = shape.n(); side >= std::max(1, min_side_cells); side /= 2) {
    const int per_axis = shape.n() / side;
    std::size_t count = 1;
    for (int k = 0; k < shape.dim(); ++k) count *= static_cast<std::size_t>(per_axis);
    for (std::size_t c = 0; c < count; ++c) {
      Window w;
      w.side = side;
      std::size_t rest = c;
      for (int k = shape.dim() - 1; k >= 0; --k) {
        w.lo[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(per_axis)) * side;
        rest /= static_cast<std::size_t>(per_axis);
      }
      out.push_back(w);
    }
  }
  return out;
}

double window_mean_oscillation(const FieldView& field, const Window& window) {
  require_window_in_grid(field.shape, window);
  const auto comps = static_cast<std::size_t>(field.components);
  std::vector<double> mean(comps, 0.0);
  std::size_t count = 0;
  for_each_in_window(field.shape, window, [&](std::size_t i) {
    const auto s = field.at(i);
    for (std::size_t c = 0; c < comps; ++c) mean[c] += s[c];
    ++count;
  });
  for (double& m : mean) m /= static_cast<double>(count);
  double osc = 0.0;
  for_each_in_window(field.shape, window, [&](std::size_t i) {
    const auto s = field.at(i);
    double sq = 0.0;
    for (std::size_t c = 0; c < comps; ++c) sq += (s[c] - mean[c]) * (s[c] - mean[c]);
    osc += std::sqrt(sq);
  });
  return osc / static_cast<double>(count);
}

double bmo_seminorm(const ScalarField& field, std::span<const Window> windows) {
  if (windows.empty()) throw InvalidArgument("bmo_seminorm needs at least one window");
  const auto view = field.view();
  std::vector<double> osc(windows.size(), 0.0);
  for (const auto& w : windows) {
    require_window_in_grid(field.shape, w);
    if (std::pow(static_cast<double>(w.side), field.shape.dim()) < 4.0) {
      throw InvalidArgument("windows must contain at least 4 grid cells");
    }
  }
  parallel_for(windows.size(), [&](std::size_t k) { osc[k] = window_mean_oscillation(view, windows[k]); });
  return *std::max_element(osc.begin(), osc.end());
}

double dyadic_bmo_1d(std::span<const double> samples, int min_cells) {
  const int n = static_cast<int>(samples.size());
  if (!is_power_of_two(n)) throw InvalidArgument("dyadic_bmo_1d needs a power-of-two sample count");
  double best = 0.0;
  for (int len = n; len >= std::max(2, min_cells); len /= 2) {
    for (int start = 0; start < n; start += len) {
      const auto part = samples.subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(len));
      double mean = 0.0;
      for (double x : part) mean += x;
      mean /= len;
      double osc = 0.0;
      for (double x : part) osc += std::abs(x - mean);
      best = std::max(best, osc / len);
    }
  }
  return best;
}

EllipticityReport measure_ellipticity(const MatrixField& field) {
  EllipticityReport r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  r.max_eigenvalue = -std::numeric_limits<double>::infinity();
  const int d = field.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  for (std::size_t i = 0; i < field.shape.size(); ++i) {
    const Eigen::MatrixXd m = field.matrix(i);
    r.max_asymmetry = std::max(r.max_asymmetry, (m - m.transpose()).cwiseAbs().maxCoeff());
    bool diagonal = true;
    for (int p = 0; p < d && diagonal; ++p) {
      for (int q = 0; q < d; ++q) {
        if (p != q && m(p, q) != 0.0) {
          diagonal = false;
          break;
        }
      }
    }
    if (diagonal) {
      r.min_eigenvalue = std::min(r.min_eigenvalue, m.diagonal().minCoeff());
      r.max_eigenvalue = std::max(r.max_eigenvalue, m.diagonal().maxCoeff());
    } else {
      solver.compute(m, Eigen::EigenvaluesOnly);
      r.min_eigenvalue = std::min(r.min_eigenvalue, solver.eigenvalues().minCoeff());
      r.max_eigenvalue = std::max(r.max_eigenvalue, solver.eigenvalues().maxCoeff());
    }
  }
  for (double x : field.b) r.max_lower_order = std::max(r.max_lower_order, std::abs(x));
  for (double x : field.c) r.max_lower_order = std::max(r.max_lower_order, std::abs(x));
  return r;
}

void validate(const MatrixField& field) {
  const auto d = static_cast<std::size_t>(field.dim());
  if (!(field.delta > 0.0 && field.delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
  if (field.a.size() != field.shape.size() * d * d) throw InvalidArgument("matrix field size mismatch");
  if (!field.b.empty() && field.b.size() != field.shape.size() * d) throw InvalidArgument("drift field size mismatch");
  if (!field.c.empty() && field.c.size() != field.shape.size()) throw InvalidArgument("potential field size mismatch");
  const auto r = measure_ellipticity(field);
  constexpr double kTol = 1e-12;
  if (r.max_asymmetry > kTol) throw InvalidArgument("matrix field is not symmetric");
  if (r.min_eigenvalue < field.delta - kTol || r.max_eigenvalue > 1.0 / field.delta + kTol) {
    throw InvalidArgument("matrix field violates the ellipticity bounds [delta, 1/delta]");
  }
  if (r.max_lower_order > field.K + kTol) throw InvalidArgument("lower-order coefficients exceed K");
}

MatrixField embed_as_matrix(const ScalarField& field, double delta, double margin_fraction) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(margin_fraction >= 0.0 && margin_fraction < 0.5)) throw InvalidArgument("margin fraction must lie in [0, 1/2)");
  const double margin = margin_fraction * (1.0 / delta - delta);
  const double lo = delta + margin;
  const double hi = 1.0 / delta - margin;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double scale = 0.0;
  for (double s : field.values) scale = std::max(scale, std::abs(s));
  const double slope = scale > 0.0 ? half / scale : 0.0;

  const auto d = static_cast<std::size_t>(field.shape.dim());
  MatrixField out{field.shape, std::vector<double>(field.shape.size() * d * d, 0.0), delta, {}, {}, 0.0, {}};
  for (std::size_t i = 0; i < field.shape.size(); ++i) {
    const double m = mid + slope * field.values[i];
    for (std::size_t k = 0; k < d; ++k) out.a[i * d * d + k * d + k] = m;
  }
  out.params = {{"kind", "embedded"}, {"source", field.params}, {"slope", slope}, {"offset", mid}};
  return out;
}

namespace {

MatrixField field_from(const GridShape& shape, double delta, const std::function<Eigen::MatrixXd(std::size_t)>& at) {
  const auto d = static_cast<std::size_t>(shape.dim());
  MatrixField out{shape, std::vector<double>(shape.size() * d * d), delta, {}, {}, 0.0, {}};
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const Eigen::MatrixXd m = at(i);
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      throw InvalidArgument("profile returned a matrix of the wrong size");
    }
    Eigen::Map<Eigen::MatrixXd>(out.a.data() + i * d * d, m.rows(), m.cols()) = m;
  }
  validate(out);
  return out;
}

}  // namespace

MatrixField constant_field(const GridShape& shape, const Eigen::MatrixXd& matrix, double delta) {
  auto out = field_from(shape, delta, [&](std::size_t) { return matrix; });
  out.params = {{"kind", "constant"}};
  return out;
}

MatrixField one_directional_field(const GridShape& shape, const MatrixProfile& profile, double delta) {
  auto out = field_from(shape, delta, [&](std::size_t i) { return profile(shape.coordinate(i, 0)); });
  out.params = {{"kind", "one_directional"}};
  return out;
}

MatrixField rotated_one_directional_field(const GridShape& shape, const MatrixProfile& profile,
                                          std::span<const double> direction, double delta) {
  if (direction.size() != static_cast<std::size_t>(shape.dim())) throw InvalidArgument("direction has wrong dimension");
  double norm = 0.0;
  for (double e : direction) norm += e * e;
  if (std::abs(std::sqrt(norm) - 1.0) > 1e-12) throw InvalidArgument("direction must be a unit vector");
  auto out = field_from(shape, delta, [&](std::size_t i) {
    const auto x = shape.center(i);
    double t = 0.0;
    for (std::size_t k = 0; k < direction.size(); ++k) t += direction[k] * x[k];
    return profile(t);
  });
  out.params = {{"kind", "rotated_one_directional"}, {"direction", std::vector<double>(direction.begin(), direction.end())}};
  return out;
}

MatrixField reference_field(ReferenceKind kind, const GridShape& shape, const ReferenceParams& params) {
  switch (kind) {
    case ReferenceKind::kConstant:
      return constant_field(shape, params.matrix, params.delta);
    case ReferenceKind::kOneDirectional:
      if (!params.profile) throw InvalidArgument("one-directional field needs a profile");
      return one_directional_field(shape, params.profile, params.delta);
    case ReferenceKind::kRotatedOneDirectional:
      if (!params.profile) throw InvalidArgument("rotated field needs a profile");
      return rotated_one_directional_field(shape, params.profile, params.direction, params.delta);
  }
  throw InvalidArgument("unknown reference field kind");
}

MatrixProfile checkerboard_profile(int dim, double delta, double width) {
  if (!(width > 0.0)) throw InvalidArgument("checkerboard width must be positive");
  return [dim, delta, width](double t) {
    const bool even = static_cast<long>(std::floor(t / width)) % 2 == 0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) m(k, k) = ((k % 2 == 0) == even) ? delta : 1.0 / delta;
    return m;
  };
}

void write_snapshot(const std::filesystem::path& path, const FieldView& view, const nlohmann::json& meta) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  const auto side = std::filesystem::path(path.string() + ".json");
  const auto side_tmp = std::filesystem::path(side.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(view.data.data()),
              static_cast<std::streamsize>(view.data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  {
    std::ofstream out(side_tmp);
    if (!out) throw std::runtime_error("cannot open " + side_tmp.string());
    out << meta.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
  std::filesystem::rename(side_tmp, side);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream side(path.string() + ".json");
  if (!side) throw InvalidArgument("missing snapshot sidecar " + path.string() + ".json");
  nlohmann::json meta = nlohmann::json::parse(side);
  GridShape shape(meta.at("d").get<int>(), meta.at("n").get<int>());
  const int components = meta.value("components", 1);
  std::vector<double> data(shape.size() * static_cast<std::size_t>(components));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open snapshot " + path.string());
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(data.size() * sizeof(double))) {
    throw InvalidArgument("snapshot " + path.string() + " is shorter than its sidecar declares");
  }
  return Snapshot{shape, components, std::move(data), std::move(meta)};
}

nlohmann::json sidecar(const ScalarField& field) {
  return {{"d", field.shape.dim()}, {"n", field.shape.n()}, {"h", field.shape.h()},
          {"delta", nullptr},       {"components", 1},      {"params", field.params}};
}

nlohmann::json sidecar(const MatrixField& field) {
  return {{"d", field.shape.dim()},   {"n", field.shape.n()},
          {"h", field.shape.h()},     {"delta", field.delta},
          {"components", field.dim() * field.dim()}, {"params", field.params}};
}

ScalarField scalar_from_snapshot(Snapshot snapshot) {
  if (snapshot.components != 1) throw InvalidArgument("snapshot is not a scalar field");
  return ScalarField{snapshot.shape, std::move(snapshot.data), snapshot.meta.value("params", nlohmann::json::object())};
}

MatrixField matrix_from_snapshot(Snapshot snapshot) {
  const int d = snapshot.shape.dim();
  if (snapshot.components != d * d) throw InvalidArgument("snapshot is not a matrix field");
  if (!snapshot.meta.contains("delta") || snapshot.meta.at("delta").is_null()) {
    throw InvalidArgument("matrix snapshot needs delta");
  }
  MatrixField out{snapshot.shape, std::move(snapshot.data), snapshot.meta.at("delta").get<double>(), {}, {}, 0.0,
                  snapshot.meta.value("params", nlohmann::json::object())};
  validate(out);
  return out;
}

}  // namespace vmolab::fields
