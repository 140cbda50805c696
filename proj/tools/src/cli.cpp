#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "json_config.hpp"
#include "output.hpp"
#include "vmolab/cutoff.hpp"
#include "vmolab/error.hpp"
#include "vmolab/fields.hpp"
#include "vmolab/oscillation.hpp"
#include "vmolab/parallel.hpp"
#include "vmolab/sharp.hpp"
#include "vmolab/solver.hpp"

namespace vmolab::cli {

namespace {

using nlohmann::json;

struct ProfileOptions {
  std::string kind = "indicator";
  int periods = 4;
  int steps = 16;
  std::uint64_t seed = 1;

  fields::SupportProfile build() const {
    if (kind == "indicator") return fields::SupportProfile::indicator();
    if (kind == "square_wave") return fields::SupportProfile::square_wave(periods);
    if (kind == "random_step") return fields::SupportProfile::random_step(steps, seed);
    throw InvalidArgument("unknown profile '" + kind + "'");
  }
  void add(CLI::App* app) {
    app->add_option("--profile", kind, "support profile f")->check(CLI::IsMember({"indicator", "square_wave", "random_step"}));
    app->add_option("--profile-periods", periods, "square wave periods");
    app->add_option("--profile-steps", steps, "random step count");
    app->add_option("--profile-seed", seed, "random step seed");
  }
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

void require_power_of_two(int n, const std::string& what) {
  require(n >= 2 && (n & (n - 1)) == 0, what + " must be a power of two >= 2");
}

// Accepts a matrix snapshot, or a scalar snapshot embedded with `delta`.
fields::MatrixField load_matrix_field(const std::string& path, std::optional<double> delta) {
  auto snap = fields::read_snapshot(path);
  if (snap.components == 1) {
    require(delta.has_value(), "scalar field snapshot needs --delta to embed it as a matrix field");
    return fields::embed_as_matrix(fields::scalar_from_snapshot(std::move(snap)), *delta);
  }
  return fields::matrix_from_snapshot(std::move(snap));
}

// ---- fs-verify ----------------------------------------------------------------

struct FsVerify {
  int trials = 1000;
  std::vector<double> ps{2.5, 3.0, 4.0};
  std::uint64_t seed = 7;
  int pad = 10;
  std::string out;

  json config() const { return {{"command", "fs-verify"}, {"trials", trials}, {"p", ps}, {"seed", seed}, {"pad", pad}}; }

  void run(std::ostream& log) const {
    require(trials >= 1, "trials must be >= 1");
    require(pad >= 0, "pad must be >= 0");
    require(!ps.empty(), "at least one p is required");
    for (double p : ps) require(p > 1.0, "every p must exceed 1");
    std::vector<std::vector<sharp::FsRow>> slots(static_cast<std::size_t>(trials));
    parallel_for(slots.size(), [&](std::size_t t) { slots[t] = sharp::fs_trial(seed, static_cast<int>(t), ps, pad); });
    std::size_t rows = 0;
    std::size_t failed = 0;
    for (const auto& s : slots) {
      for (const auto& r : s) {
        ++rows;
        failed += r.pass ? 0 : 1;
      }
    }
    write_csv(out, "fs-verify", config_digest(config()), "trial,mode,p,N0,lambda,lhs,rhs,pass", [&](std::ostream& os) {
      for (const auto& s : slots) {
        for (const auto& r : s) {
          os << r.trial << ',' << sharp::to_string(r.mode) << ',' << number(r.p) << ',' << number(r.n0) << ','
             << number(r.lambda) << ',' << number(r.lhs) << ',' << number(r.rhs) << ',' << (r.pass ? 1 : 0) << '\n';
        }
      }
    });
    log << "fs-verify: " << rows << " rows, " << failed << " failed\n";
  }
};

// ---- field-gen ----------------------------------------------------------------

struct FieldGen {
  std::string kind = "example";
  double epsilon = 0.1;
  double kappa = 8.0;
  int terms = 4;
  int res = 1024;
  std::optional<double> delta;
  ProfileOptions profile;
  std::string out;

  json config() const {
    return {{"command", "field-gen"}, {"kind", kind}, {"epsilon", epsilon}, {"kappa", kappa}, {"terms", terms},
            {"res", res}, {"delta", delta ? json(*delta) : json(nullptr)}, {"profile", profile.build().to_json()}};
  }

  void run(std::ostream& log) const {
    require(kind == "example", "only the 'example' field kind is available");
    require(res >= 2, "res must be >= 2");
    fields::ExampleParams params{epsilon, kappa, terms, profile.build()};
    fields::validate(params);
    auto field = fields::example_field(params, res);
    const std::string digest = config_digest(config());
    if (delta) {
      auto matrix = fields::embed_as_matrix(field, *delta);
      auto meta = fields::sidecar(matrix);
      meta["config_digest"] = digest;
      fields::write_snapshot(out, matrix.view(), meta);
    } else {
      auto meta = fields::sidecar(field);
      meta["config_digest"] = digest;
      fields::write_snapshot(out, field.view(), meta);
    }
    log << "field-gen: wrote " << out << " (" << res << "^2 samples)\n";
  }
};

// ---- oscillation --------------------------------------------------------------

struct Oscillation {
  std::string field;
  double r0 = 0.25;
  int directions = 16;
  int random_balls = 1000;
  std::uint64_t seed = 1;
  std::string out;

  json config() const {
    return {{"command", "oscillation"}, {"field", field}, {"r0", r0}, {"directions", directions},
            {"random_balls", random_balls}, {"seed", seed}};
  }

  void run(std::ostream& log) const {
    require(r0 > 0.0, "r0 must be positive");
    require(directions >= 1, "directions must be >= 1");
    require(random_balls >= 0, "random-balls must be >= 0");
    const auto snap = fields::read_snapshot(field);
    require(snap.shape.dim() == 2, "oscillation sweeps are available for 2-D fields");
    const fields::FieldView view{snap.shape, snap.components, snap.data};
    const auto balls = oscillation::make_ball_sample(snap.shape, r0, random_balls, seed);
    require(!balls.empty(), "no balls of radius < r0 fit the grid");
    const auto dirs = oscillation::uniform_direction_grid(2, directions);
    const auto gamma = oscillation::gamma_profile(view, balls, dirs);
    write_csv(out, "oscillation", config_digest(config()), "region_id,cx,cy,radius,best_dir_angle,osc_value",
              [&](std::ostream& os) {
                for (std::size_t k = 0; k < gamma.balls.size(); ++k) {
                  const auto& r = gamma.balls[k];
                  const auto c = r.region.center(2);
                  const auto e = r.direction.direction();
                  os << k << ',' << number(c[0]) << ',' << number(c[1]) << ',' << number(r.region.radius()) << ','
                     << number(std::atan2(e(1), e(0))) << ',' << number(r.value) << '\n';
                }
              });
    log << "oscillation: " << balls.size() << " regions, gamma estimate " << number(gamma.gamma) << '\n';
  }
};

// ---- example-bound ------------------------------------------------------------

struct ExampleBound {
  double epsilon = 0.1;
  double kappa = 8.0;
  int res = 1024;
  std::optional<int> terms;
  int min_side = 8;
  double tolerance = 0.05;
  ProfileOptions profile;
  std::string out;

  json config() const {
    return {{"command", "example-bound"}, {"epsilon", epsilon}, {"kappa", kappa}, {"res", res},
            {"terms", terms ? json(*terms) : json(nullptr)}, {"min_side", min_side}, {"tolerance", tolerance},
            {"profile", profile.build().to_json()}};
  }

  void run(std::ostream& log) const {
    require(kappa >= 4.0, "kappa must be >= 4");
    require(epsilon > 0.0, "epsilon must be positive");
    require_power_of_two(res, "res");
    require(min_side >= 2 && min_side <= res, "min-side must lie in [2, res]");
    require(tolerance >= 0.0, "tolerance must be nonnegative");
    const int resolved = oscillation::resolved_terms(kappa, res);
    require(resolved >= 1, "res too coarse to resolve any example term");
    if (terms) require(*terms >= 1 && *terms <= resolved, "terms must lie in [1, " + std::to_string(resolved) + "] at this res");
    fields::ExampleParams params{epsilon, kappa, terms.value_or(resolved), profile.build()};
    const auto report = oscillation::verify_example_bound(params, res, min_side, tolerance);
    const double h = 1.0 / res;
    write_csv(out, "example-bound", config_digest(config()),
              "square_id,x0,y0,side,tau,M,first_term,tail,tail_sum_hi,tail_bound_lo,M_over_Q,gamma_bound,pass",
              [&](std::ostream& os) {
                for (std::size_t k = 0; k < report.squares.size(); ++k) {
                  const auto& s = report.squares[k];
                  const bool pass = s.discrete_pass && s.gamma_pass && s.tail_check.holds && s.tail_check.termwise &&
                                    s.tail_check.geometry;
                  os << k << ',' << number(s.window.lo[0] * h) << ',' << number(s.window.lo[1] * h) << ','
                     << number(s.window.side * h) << ',' << (s.tau ? std::to_string(*s.tau) : "NA") << ','
                     << number(s.m) << ',' << number(s.first_term) << ',' << number(s.tail) << ','
                     << (s.tau ? number(s.tail_check.tail.hi) : "NA") << ','
                     << (s.tau ? number(s.tail_check.bound.lo) : "NA") << ',' << number(s.m / s.measure) << ','
                     << number(report.gamma_bound) << ',' << (pass ? 1 : 0) << '\n';
                }
              });
    log << "example-bound: " << report.squares.size() << " squares, max M/|Q| " << number(report.max_ratio)
        << ", bound " << number(report.gamma_bound) << (report.all_pass ? ", all pass\n" : ", FAILURES\n");
  }
};

// ---- apriori-sweep ------------------------------------------------------------

struct AprioriSweep {
  std::string field;
  std::optional<double> delta;
  std::vector<double> lambdas{16, 64, 256, 1024, 4096};
  double p = 4.0;
  std::uint64_t rhs_seed = 1;
  int rhs_count = 5;
  double tol = 1e-10;
  std::string out;

  json config() const {
    return {{"command", "apriori-sweep"}, {"field", field}, {"delta", delta ? json(*delta) : json(nullptr)},
            {"lambdas", lambdas}, {"p", p}, {"rhs_seed", rhs_seed}, {"rhs_count", rhs_count}, {"tol", tol}};
  }

  void run(std::ostream& log) const {
    require(p > 2.0, "p must exceed 2: the a priori estimate is stated for p in (2, inf)");
    require(!lambdas.empty(), "at least one lambda is required");
    require(rhs_count >= 1, "rhs-count must be >= 1");
    require(tol > 0.0, "tol must be positive");
    const auto a = load_matrix_field(field, delta);
    const double lambda_solve = solver::discretize(a, 0.0).gershgorin_lambda;
    for (double l : lambdas) {
      require(l > 0.0 && l >= lambda_solve, "every lambda must be positive and >= lambda_solve = " + number(lambda_solve));
    }
    const auto family = solver::random_smooth_family(a.shape, static_cast<std::size_t>(rhs_count), rhs_seed);
    solver::SolveOptions options;
    options.tolerance = tol;
    const auto reports = solver::apriori_probe(a, lambdas, p, family, options);
    for (const auto& r : reports) {
      if (r.error) {
        throw SolverError("lambda " + number(r.lambda) + " case " + std::to_string(r.case_index) + ": " + *r.error,
                          r.iterations, r.residual);
      }
    }
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto& r : reports) {
      lo = std::min(lo, r.implied_constant);
      hi = std::max(hi, r.implied_constant);
    }
    write_csv(out, "apriori-sweep", config_digest(config()),
              "lambda,p,case,norm_u,norm_ux,norm_uxx,norm_rhs,implied_N,solver_iters,residual", [&](std::ostream& os) {
                for (const auto& r : reports) {
                  os << number(r.lambda) << ',' << number(r.p) << ',' << r.case_index << ',' << number(r.norm_u)
                     << ',' << number(r.norm_ux) << ',' << number(r.norm_uxx) << ',' << number(r.norm_rhs) << ','
                     << number(r.implied_constant) << ',' << r.iterations << ',' << number(r.residual) << '\n';
                }
              });
    log << "apriori-sweep: lambda_solve " << number(lambda_solve) << ", implied N in [" << number(lo) << ", "
        << number(hi) << "]\n";
  }
};

// ---- agmon-check --------------------------------------------------------------

struct AgmonCheck {
  int res = 256;
  int dim = 1;
  std::vector<double> mus{0.0, 5.0, 20.0};
  double p = 4.0;
  double mu_max = 100.0;
  double mu_step = 0.05;
  std::string cutoff = "bump";
  std::string out;

  json config() const {
    return {{"command", "agmon-check"}, {"res", res}, {"dim", dim}, {"mu", mus}, {"p", p},
            {"mu_max", mu_max}, {"mu_step", mu_step}, {"cutoff", cutoff}};
  }

  void run(std::ostream& log) const {
    require(res >= 8, "res must be >= 8");
    require(dim == 1 || dim == 2, "dim must be 1 or 2");
    require(p >= 1.0, "p must be >= 1");
    require(mu_max >= 0.0 && mu_step > 0.0, "mu grid needs mu-max >= 0 and mu-step > 0");
    for (double mu : mus) require(mu >= 0.0, "every mu must be nonnegative");
    require(cutoff == "bump" || cutoff == "plateau", "cutoff must be bump or plateau");
    const double fine_cells = std::pow(2.0 * res, dim + 1);
    require(fine_cells <= static_cast<double>(solver::kDefaultLiftCap),
            "lifted grid at 2 res exceeds " + std::to_string(solver::kDefaultLiftCap) + " cells");
    const auto zeta = cutoff == "plateau" ? cutoff::ZetaCutoff::plateau(0.5, 0.15, 0.4) : cutoff::ZetaCutoff::bump(0.5, 0.4);

    auto lift = [&](int n, double mu) {
      const GridShape shape(dim, n);
      const auto u = GridFunction::sample(shape, [](std::span<const double> x) {
        return std::sin(2.0 * std::numbers::pi * x[0]) + 0.5 * std::cos(4.0 * std::numbers::pi * x[x.size() - 1]);
      });
      std::vector<double> a(shape.size() * static_cast<std::size_t>(dim * dim), 0.0);
      for (std::size_t i = 0; i < shape.size(); ++i) {
        const double m = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * shape.coordinate(i, 0));
        for (int k = 0; k < dim; ++k) a[i * static_cast<std::size_t>(dim * dim) + static_cast<std::size_t>(k * dim + k)] = m;
      }
      fields::MatrixField field{shape, std::move(a), 0.5, {}, {}, 0.0, {}};
      return solver::agmon_lift_check(u, zeta, mu, field);
    };

    struct Row {
      double mu;
      double coarse;
      double fine;
      double integral;
    };
    std::vector<Row> rows;
    for (double mu : mus) {
      rows.push_back({mu, lift(res, mu).residual, lift(2 * res, mu).residual, solver::zeta_cos_lp(zeta, mu, p)});
    }
    const auto floor = solver::min_zeta_cos_lp(zeta, p, mu_max, mu_step);
    write_csv(out, "agmon-check", config_digest(config()), "kind,mu,res,residual,residual_half_h,ratio,lp_integral",
              [&](std::ostream& os) {
                for (const auto& r : rows) {
                  os << "lift," << number(r.mu) << ',' << res << ',' << number(r.coarse) << ',' << number(r.fine)
                     << ',' << number(r.fine > 0.0 ? r.coarse / r.fine : NAN) << ',' << number(r.integral) << '\n';
                }
                os << "floor," << number(floor.mu) << ",NA,NA,NA,NA," << number(floor.value) << '\n';
              });
    log << "agmon-check: " << rows.size() << " mu values, min integral " << number(floor.value) << " at mu "
        << number(floor.mu) << '\n';
  }
};

// ---- local-probe --------------------------------------------------------------

struct LocalProbe {
  std::string field;
  std::optional<double> delta;
  int res = 128;
  double radius = 0.1;
  std::vector<double> center{0.5, 0.5};
  double p = 4.0;
  int count = 20;
  std::uint64_t seed = 1;
  int directions = 8;
  std::string out;

  json config() const {
    return {{"command", "local-probe"}, {"field", field}, {"delta", delta ? json(*delta) : json(nullptr)},
            {"res", res}, {"radius", radius}, {"center", center}, {"p", p}, {"count", count}, {"seed", seed},
            {"directions", directions}};
  }

  void run(std::ostream& log) const {
    require(p >= 1.0, "p must be >= 1");
    require(count >= 1, "count must be >= 1");
    require(radius > 0.0, "radius must be positive");
    require(directions >= 0, "directions must be >= 0");
    fields::MatrixField a = field.empty()
                                ? fields::constant_field(GridShape(static_cast<int>(center.size()), res),
                                                         Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(center.size()),
                                                                                   static_cast<Eigen::Index>(center.size())),
                                                         1.0)
                                : load_matrix_field(field, delta);
    require(center.size() == static_cast<std::size_t>(a.dim()), "center must have one coordinate per dimension");
    const auto corpus = solver::bump_polynomial_family(a.shape, center, radius, static_cast<std::size_t>(count), seed);
    std::optional<double> gamma;
    if (directions > 0 && a.dim() == 2) {
      const auto ball = oscillation::Region::ball(center, radius);
      const auto dirs = oscillation::uniform_direction_grid(2, directions);
      gamma = oscillation::best_direction(a.view(), ball, dirs).value;
    }
    const auto report = solver::local_estimate_probe(a, p, corpus, radius, gamma);
    write_csv(out, "local-probe", config_digest(config()), "case,radius,p,ratio,fitted_N,gamma", [&](std::ostream& os) {
      for (std::size_t k = 0; k < report.per_function.size(); ++k) {
        os << k << ',' << number(radius) << ',' << number(p) << ',' << number(report.per_function[k]) << ','
           << number(report.fitted_constant) << ',' << number(report.gamma) << '\n';
      }
    });
    log << "local-probe: fitted N " << number(report.fitted_constant) << '\n';
  }
};

CLI::App* subcommand(CLI::App& app, const std::string& name, const std::string& description) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->fallthrough();  // --config belongs to the root app
  return sub;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vmolab: dyadic inequality, coefficient oscillation and elliptic estimate experiments"};
  app.require_subcommand(1);
  // CLI11 only reads config files at the root; JsonConfig routes the keys to the chosen subcommand.
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option values for the subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);

  FsVerify fs;
  auto* fs_cmd = subcommand(app, "fs-verify", "randomized distribution and norm inequality suite");
  fs_cmd->add_option("--trials", fs.trials, "number of trials");
  fs_cmd->add_option("--p", fs.ps, "exponents for the norm bound")->delimiter(',');
  fs_cmd->add_option("--seed", fs.seed, "seed");
  fs_cmd->add_option("--pad", fs.pad, "zero-padding levels");
  fs_cmd->add_option("--out", fs.out, "output CSV")->required();

  FieldGen fg;
  auto* fg_cmd = subcommand(app, "field-gen", "sample the example coefficient field");
  fg_cmd->add_option("--kind", fg.kind, "field kind");
  fg_cmd->add_option("--epsilon", fg.epsilon, "oscillation parameter");
  fg_cmd->add_option("--kappa", fg.kappa, "scale ratio, >= 4");
  fg_cmd->add_option("--terms", fg.terms, "number of terms");
  fg_cmd->add_option("--res", fg.res, "grid resolution per axis");
  fg_cmd->add_option("--delta", fg.delta, "embed as a matrix field with this ellipticity");
  fg.profile.add(fg_cmd);
  fg_cmd->add_option("--out", fg.out, "output snapshot (.bin, sidecar at <out>.json)")->required();

  Oscillation os;
  auto* os_cmd = subcommand(app, "oscillation", "empirical oscillation estimate over sampled balls");
  os_cmd->add_option("--field", os.field, "field snapshot")->required();
  os_cmd->add_option("--r0", os.r0, "ball radius bound");
  os_cmd->add_option("--directions", os.directions, "number of sampled directions");
  os_cmd->add_option("--random-balls", os.random_balls, "random balls per radius decade");
  os_cmd->add_option("--seed", os.seed, "seed");
  os_cmd->add_option("--out", os.out, "output CSV")->required();

  ExampleBound eb;
  auto* eb_cmd = subcommand(app, "example-bound", "check the example field's oscillation bound on dyadic squares");
  eb_cmd->add_option("--epsilon", eb.epsilon, "oscillation parameter");
  eb_cmd->add_option("--kappa", eb.kappa, "scale ratio, >= 4");
  eb_cmd->add_option("--res", eb.res, "grid resolution (power of two)");
  eb_cmd->add_option("--terms", eb.terms, "number of terms (default: all resolved)");
  eb_cmd->add_option("--min-side", eb.min_side, "smallest square side in cells");
  eb_cmd->add_option("--tolerance", eb.tolerance, "relative discretization tolerance");
  eb.profile.add(eb_cmd);
  eb_cmd->add_option("--out", eb.out, "output CSV")->required();

  AprioriSweep ap;
  auto* ap_cmd = subcommand(app, "apriori-sweep", "solve (L - lambda) u = f and report the implied constant");
  ap_cmd->add_option("--field", ap.field, "field snapshot")->required();
  ap_cmd->add_option("--delta", ap.delta, "ellipticity used to embed a scalar snapshot");
  ap_cmd->add_option("--lambdas", ap.lambdas, "lambda values")->delimiter(',');
  ap_cmd->add_option("--p", ap.p, "norm exponent, > 2");
  ap_cmd->add_option("--rhs-seed", ap.rhs_seed, "seed of the right-hand sides");
  ap_cmd->add_option("--rhs-count", ap.rhs_count, "right-hand sides per lambda");
  ap_cmd->add_option("--tol", ap.tol, "relative residual target");
  ap_cmd->add_option("--out", ap.out, "output CSV")->required();

  AgmonCheck ag;
  auto* ag_cmd = subcommand(app, "agmon-check", "lifted-operator identity residuals and the cutoff integral floor");
  ag_cmd->add_option("--res", ag.res, "coarse resolution (the check also runs at 2 res)");
  ag_cmd->add_option("--dim", ag.dim, "dimension of u (1 or 2)");
  ag_cmd->add_option("--mu", ag.mus, "mu values")->delimiter(',');
  ag_cmd->add_option("--p", ag.p, "exponent of the cutoff integral");
  ag_cmd->add_option("--mu-max", ag.mu_max, "upper end of the mu scan");
  ag_cmd->add_option("--mu-step", ag.mu_step, "mu scan step");
  ag_cmd->add_option("--cutoff", ag.cutoff, "cutoff shape")->check(CLI::IsMember({"bump", "plateau"}));
  ag_cmd->add_option("--out", ag.out, "output CSV")->required();

  LocalProbe lp;
  auto* lp_cmd = subcommand(app, "local-probe", "fit the local second-derivative estimate on compact bumps");
  lp_cmd->add_option("--field", lp.field, "field snapshot (default: identity)");
  lp_cmd->add_option("--delta", lp.delta, "ellipticity used to embed a scalar snapshot");
  lp_cmd->add_option("--res", lp.res, "resolution when no field is given");
  lp_cmd->add_option("--radius", lp.radius, "support radius");
  lp_cmd->add_option("--center", lp.center, "support center")->delimiter(',');
  lp_cmd->add_option("--p", lp.p, "norm exponent");
  lp_cmd->add_option("--count", lp.count, "corpus size");
  lp_cmd->add_option("--seed", lp.seed, "seed");
  lp_cmd->add_option("--directions", lp.directions, "directions for the oscillation estimate (0 disables)");
  lp_cmd->add_option("--out", lp.out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "vmolab: invalid config: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (*fs_cmd) fs.run(out);
    if (*fg_cmd) fg.run(out);
    if (*os_cmd) os.run(out);
    if (*eb_cmd) eb.run(out);
    if (*ap_cmd) ap.run(out);
    if (*ag_cmd) ag.run(out);
    if (*lp_cmd) lp.run(out);
  } catch (const InvalidArgument& e) {
    err << "vmolab: invalid config: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "vmolab: error: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace vmolab::cli
