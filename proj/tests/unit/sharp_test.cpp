#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "convert.hpp"
#include "oracles.hpp"
#include "vmolab/dyadic.hpp"
#include "vmolab/error.hpp"
#include "vmolab/sharp.hpp"

namespace {

using namespace vmolab::sharp;
using vmolab::dyadic::build_dyadic_filtration;
using vmolab::dyadic::dyadic_maximal;
using vmolab::dyadic::pad_with_zero_levels;
using oracle::on;

constexpr int kTrials = 150;

// Direct per-cell evaluation of int_C (u - v_C)_+ <= int_C g.
bool monotone_premise_oracle(const oracle::Space& s, const FsTriple& t) {
  for (const auto& cells : s.levels) {
    for (const auto& c : cells) {
      const double vc = oracle::cell_mean(s, c, t.v.values);
      long double lhs = 0.0L;
      long double rhs = 0.0L;
      for (auto a : c) {
        lhs += std::max(0.0, t.u[a] - vc) * s.weights[a];
        rhs += t.g[a] * s.weights[a];
      }
      if (lhs > rhs * (1 + 1e-12L) + 1e-15L) return false;
    }
  }
  return true;
}

bool sharp_premise_oracle(const oracle::Space& s, const FsTriple& t, const MajorantFamily& m) {
  for (std::size_t k = 0; k < s.levels.size(); ++k) {
    const int n = s.n_min + static_cast<int>(k);
    for (const auto& c : s.levels[k]) {
      std::vector<double> uc(t.u.size(), 0.0);
      for (auto a : c) uc[a] = m.at(n, a);
      const double mu = oracle::mean_oscillation(s, c, t.u.values) * oracle::cell_measure(s, c);
      const double mm = oracle::mean_oscillation(s, c, uc) * oracle::cell_measure(s, c);
      long double rhs = 0.0L;
      for (auto a : c) rhs += t.g[a] * s.weights[a];
      if (std::min(mu, mm) > rhs * (1 + 1e-12L) + 1e-15L) return false;
    }
  }
  return true;
}

TEST(Constants, AlphaAndProofTrackedConstant) {
  EXPECT_DOUBLE_EQ(alpha_constant(2.0), 0.25);
  EXPECT_DOUBLE_EQ(alpha_constant(4.0), 0.125);
  EXPECT_DOUBLE_EQ(fs_constant(2.0, 2.0), 32.0);
  // 2 q^p alpha^(1-p) with q = 4/3, alpha = 1/8
  EXPECT_NEAR(fs_constant(4.0, 4.0), 2.0 * std::pow(4.0 / 3.0, 4) * 512.0, 1e-9);
  EXPECT_THROW(fs_constant(1.0, 2.0), vmolab::InvalidArgument);
}

TEST(SharpFunction, TwoAtomExample) {
  auto space = std::make_shared<const vmolab::dyadic::AtomSpace>(std::vector<double>{1, 1});
  const PartitionFiltration f(space, 0, {{{0, 1}}, {{0}, {1}}});
  EXPECT_EQ(sharp_function(f, on(f, {1, -1})).values, (std::vector<double>{1, 1}));
}

TEST(SharpFunction, VanishesOnConstantsAndMatchesBruteForce) {
  oracle::Gen gen(31);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(1, 40)));
    const auto f = oracle::to_filtration(s);
    for (double x : sharp_function(f, on(f, std::vector<double>(f.atom_count(), gen.uniform(-3, 3)))).values) {
      EXPECT_NEAR(x, 0.0, 1e-12);
    }
    const auto u = on(f, gen.lumpy(f.atom_count(), 2.0));
    const auto ref = oracle::sharp(s, u.values);
    const auto got = sharp_function(f, u);
    for (std::size_t a = 0; a < ref.size(); ++a) EXPECT_NEAR(got[a], ref[a], 1e-12 * (1 + ref[a]));
  }
}

TEST(SharpFunction, AbsoluteValueAndConstantComparisons) {
  oracle::Gen gen(32);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(1, 40)));
    const auto f = oracle::to_filtration(s);
    const auto u = on(f, gen.reals(f.atom_count(), -2, 2));
    std::vector<double> absu(u.size());
    std::transform(u.values.begin(), u.values.end(), absu.begin(), [](double x) { return std::abs(x); });
    // Per cell: avg ||u| - |u|_C| <= 2 avg |u - c| for any c.
    for (const auto& cells : s.levels) {
      for (const auto& c : cells) {
        const double cst = gen.uniform(-2, 2);
        std::vector<double> shifted(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) shifted[a] = std::abs(u[a] - cst);
        const double rhs = 2.0 * oracle::cell_mean(s, c, shifted);
        EXPECT_LE(oracle::mean_oscillation(s, c, absu), rhs * (1 + 1e-12) + 1e-15);
      }
    }
    // u# <= 2 M(u - c) pointwise.
    const double cst = gen.uniform(-2, 2);
    std::vector<double> shifted(u.size());
    for (std::size_t a = 0; a < u.size(); ++a) shifted[a] = u[a] - cst;
    const auto sh = sharp_function(f, u);
    const auto m = dyadic_maximal(f, on(f, shifted));
    for (std::size_t a = 0; a < u.size(); ++a) EXPECT_LE(sh[a], 2.0 * m[a] * (1 + 1e-12) + 1e-15);
  }
}

TEST(MonotonePremise, CanonicalExamples) {
  oracle::Gen gen(33);
  for (int t = 0; t < kTrials; ++t) {
    const auto f = oracle::to_filtration(gen.filtration(static_cast<std::size_t>(gen.integer(1, 40))));
    const auto v = on(f, gen.reals(f.atom_count(), 0, 3));
    auto half_sharp = sharp_function(f, v);
    for (auto& x : half_sharp.values) x *= 0.5;
    EXPECT_TRUE(check_premise_monotone(f, FsTriple{v, v, half_sharp}).holds);

    const auto c = on(f, std::vector<double>(f.atom_count(), gen.uniform(0, 3)));
    EXPECT_TRUE(check_premise_monotone(f, FsTriple{c, c, on(f, std::vector<double>(f.atom_count(), 0.0))}).holds);
  }
}

TEST(MonotonePremise, ScalingClosure) {
  oracle::Gen gen(34);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(1, 40)));
    const auto f = oracle::to_filtration(s);
    const auto made = make_monotone_triple(f, f.atom_count(), gen.engine());
    ASSERT_TRUE(check_premise_monotone(f, made.triple).holds);
    FsTriple scaled = made.triple;
    for (std::size_t a = 0; a < scaled.u.size(); ++a) {
      scaled.u.values[a] *= gen.uniform(1.0, 2.0);
      scaled.v.values[a] *= 2.0;
      scaled.g.values[a] *= 2.0;
    }
    EXPECT_TRUE(check_premise_monotone(f, scaled).holds);
    EXPECT_TRUE(monotone_premise_oracle(s, scaled));
  }
}

TEST(MonotonePremise, AgreesWithBruteForceOnPerturbedTriples) {
  oracle::Gen gen(35);
  int failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(2, 30)));
    const auto f = oracle::to_filtration(s);
    auto made = make_monotone_triple(f, f.atom_count(), gen.engine()).triple;
    for (auto& g : made.g.values) g *= gen.uniform(0.3, 1.0);
    const bool ours = check_premise_monotone(f, made).holds;
    EXPECT_EQ(ours, monotone_premise_oracle(s, made));
    failures += ours ? 0 : 1;
  }
  EXPECT_GT(failures, 0) << "perturbation never broke the premise; test is vacuous";
}

TEST(MonotonePremise, ReportsWorstCellAndRejectsBadTriples) {
  const auto f = build_dyadic_filtration(1, 1);
  const auto bad = check_premise_monotone(f, FsTriple{on(f, {2, 0}), on(f, {2, 0}), on(f, {0, 0})});
  ASSERT_FALSE(bad.holds);
  ASSERT_TRUE(bad.worst.has_value());
  EXPECT_EQ(bad.worst->level, 0);
  EXPECT_NEAR(bad.worst->violation, 0.5, 1e-15);
  EXPECT_THROW(check_premise_monotone(f, FsTriple{on(f, {2, 0}), on(f, {1, 0}), on(f, {0, 0})}),
               vmolab::InvalidArgument);
  const auto other = build_dyadic_filtration(1, 2);
  EXPECT_THROW(check_premise_monotone(other, FsTriple{on(f, {0, 0}), on(f, {0, 0}), on(f, {0, 0})}),
               vmolab::InvalidArgument);
}

TEST(SharpPremise, ConstantUAndSharpFunctionChoice) {
  oracle::Gen gen(36);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(1, 40)));
    const auto f = oracle::to_filtration(s);
    const auto zero = on(f, std::vector<double>(f.atom_count(), 0.0));
    const auto c = on(f, std::vector<double>(f.atom_count(), gen.uniform(-2, 2)));
    std::vector<double> absc(c.values.size(), std::abs(c[0]));
    EXPECT_TRUE(check_premise_sharp(f, FsTriple{c, on(f, absc), zero}, MajorantFamily::identity(f, c)).holds);

    const auto u = on(f, gen.reals(f.atom_count(), -2, 2));
    std::vector<double> absu(u.size());
    std::transform(u.values.begin(), u.values.end(), absu.begin(), [](double x) { return std::abs(x); });
    EXPECT_TRUE(check_premise_sharp(f, FsTriple{u, on(f, absu), sharp_function(f, u)}, MajorantFamily::identity(f, u))
                    .holds);
  }
}

TEST(SharpPremise, GeneratedTriplesAgreeWithBruteForce) {
  oracle::Gen gen(37);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(1, 30)));
    const auto f = oracle::to_filtration(s);
    const bool nonnegative = gen.coin();
    const auto made = make_sharp_triple(f, f.atom_count(), nonnegative, gen.engine());
    ASSERT_TRUE(made.majorants.has_value());
    EXPECT_TRUE(check_premise_sharp(f, made.triple, *made.majorants).holds);
    EXPECT_TRUE(sharp_premise_oracle(s, made.triple, *made.majorants));
    for (std::size_t a = 0; a < made.triple.u.size(); ++a) {
      EXPECT_LE(std::abs(made.triple.u[a]), made.triple.v[a]);
      EXPECT_GE(made.triple.g[a], 0.0);
      if (nonnegative) EXPECT_GE(made.triple.u[a], 0.0);
      for (int n = f.n_min(); n <= f.n_max(); ++n) {
        EXPECT_GE(made.majorants->at(n, a), std::abs(made.triple.u[a]));
        EXPECT_LE(made.majorants->at(n, a), made.triple.v[a]);
      }
    }
    auto shrunk = made.triple;
    for (auto& g : shrunk.g.values) g *= 0.5;
    EXPECT_EQ(check_premise_sharp(f, shrunk, *made.majorants).holds, sharp_premise_oracle(s, shrunk, *made.majorants));
  }
}

TEST(DistributionBound, EmptyLevelSetAboveMaximum) {
  oracle::Gen gen(38);
  const auto f = pad_with_zero_levels(build_dyadic_filtration(1, 3), 4);
  const auto made = make_monotone_triple(f, 8, gen.engine());
  const double top = *std::max_element(made.triple.u.values.begin(), made.triple.u.values.end());
  const auto b = distribution_bound(f, made.triple, 1.01 * top);
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_GE(b.slack(), 0.0);
  EXPECT_THROW(distribution_bound(f, made.triple, 0.0), vmolab::InvalidArgument);
}

TEST(DistributionBound, SidesMatchBruteForceAndHoldAboveThreshold) {
  oracle::Gen gen(39);
  for (int t = 0; t < kTrials; ++t) {
    const auto f = pad_with_zero_levels(build_dyadic_filtration(gen.integer(1, 2), gen.integer(1, 3)), 10);
    const auto s = oracle::from_filtration(f);
    const std::size_t support = f.atom_count() - 10;
    const auto made = gen.coin() ? make_monotone_triple(f, support, gen.engine())
                                 : make_sharp_triple(f, support, false, gen.engine());
    const double alpha = alpha_constant(f.regularity());
    const auto mv = oracle::maximal(s, made.triple.v.values);
    const double threshold = truncation_threshold(f, made.triple.v);
    for (double lambda : sample_lambdas(made.triple.u, threshold, 20, gen.engine())) {
      ASSERT_GE(lambda, threshold);
      const auto b = distribution_bound(f, made.triple, lambda);
      long double mass = 0.0L;
      for (std::size_t a = 0; a < mv.size(); ++a) {
        if (mv[a] > alpha * lambda) mass += made.triple.g[a] * s.weights[a];
      }
      EXPECT_NEAR(b.lhs, oracle::level_set_measure(s, made.triple.u.values, lambda), 1e-12);
      EXPECT_NEAR(b.rhs, static_cast<double>(2.0L / lambda * mass), 1e-12 * (1 + b.rhs));
      EXPECT_GE(b.slack(), -1e-12);
    }
  }
}

TEST(DistributionBound, NonnegativeSharpModeHoldsWithUnitCoefficient) {
  oracle::Gen gen(40);
  for (int t = 0; t < kTrials; ++t) {
    const auto f = pad_with_zero_levels(build_dyadic_filtration(gen.integer(1, 2), gen.integer(1, 3)), 10);
    const auto made = make_sharp_triple(f, f.atom_count() - 10, true, gen.engine());
    const double threshold = truncation_threshold(f, made.triple.v);
    for (double lambda : sample_lambdas(made.triple.u, threshold, 20, gen.engine())) {
      EXPECT_GE(distribution_bound(f, made.triple, lambda, DistributionCoefficient::kNonnegative).slack(), -1e-12);
    }
  }
}

TEST(LayerCake, EqualsDirectNorm) {
  oracle::Gen gen(41);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = gen.filtration(static_cast<std::size_t>(gen.integer(1, 40)));
    const auto f = oracle::to_filtration(s);
    const auto u = on(f, gen.lumpy(f.atom_count(), 2.0));
    const double p = gen.uniform(1.0, 5.0);
    const double direct = std::pow(oracle::lp_norm(s, u.values, p), p);
    EXPECT_NEAR(layer_cake_pnorm(u, p), direct, 1e-12 * (1 + direct));
  }
}

TEST(NormBound, ZeroFunctionAndProofChain) {
  oracle::Gen gen(42);
  for (int t = 0; t < kTrials; ++t) {
    const auto f = pad_with_zero_levels(build_dyadic_filtration(gen.integer(1, 2), gen.integer(1, 3)), 10);
    const std::size_t support = f.atom_count() - 10;
    auto made = make_monotone_triple(f, support, gen.engine());
    for (double p : {2.5, 4.0}) {
      const auto b = fs_norm_bound(f, made.triple, p);
      EXPECT_DOUBLE_EQ(b.constant, fs_constant(p, f.regularity()));
      EXPECT_LE(b.lhs, b.chebyshev_rhs * (1 + 1e-12));
      EXPECT_LE(b.chebyshev_rhs, b.rhs * (1 + 1e-12));
    }
    auto zero = made.triple;
    std::fill(zero.u.values.begin(), zero.u.values.end(), 0.0);
    const auto b = fs_norm_bound(f, zero, 3.0);
    EXPECT_EQ(b.lhs, 0.0);
    EXPECT_GE(b.rhs, 0.0);
  }
}

TEST(NormBound, SharpTriplesOnPaddedSpaces) {
  oracle::Gen gen(43);
  for (int t = 0; t < kTrials; ++t) {
    const auto f = pad_with_zero_levels(build_dyadic_filtration(gen.integer(1, 2), gen.integer(1, 3)), 10);
    const auto made = make_sharp_triple(f, f.atom_count() - 10, gen.coin(), gen.engine());
    for (double p : {2.5, 4.0}) {
      const auto b = fs_norm_bound(f, made.triple, p);
      EXPECT_LE(b.lhs, b.rhs * (1 + 1e-12));
    }
  }
}

TEST(FsTrial, DeterministicAndComplete) {
  const std::vector<double> ps{2.5, 3.0, 4.0};
  for (int trial : {0, 1, 4, 5, 11}) {
    const auto a = fs_trial(7, trial, ps);
    const auto b = fs_trial(7, trial, ps);
    ASSERT_EQ(a.size(), 66u);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].lhs, b[i].lhs);
      EXPECT_EQ(a[i].rhs, b[i].rhs);
      EXPECT_EQ(a[i].lambda, b[i].lambda);
      EXPECT_TRUE(a[i].pass) << to_string(a[i].mode) << " row " << i;
    }
    const auto other = fs_trial(8, trial, ps);
    EXPECT_NE(other[0].lambda, a[0].lambda);
  }
}

TEST(FsTrial, FiltrationsCoverEightToSixtyFourAtoms) {
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = trial_filtration(trial);
    const auto original = f.atom_count() - 10;
    EXPECT_GE(original, 8u);
    EXPECT_LE(original, 64u);
    EXPECT_TRUE(f.regularity() == 2.0 || f.regularity() == 4.0);
  }
}

TEST(FsTrial, LambdasLieAboveThreshold) {
  oracle::Gen gen(44);
  const auto f = trial_filtration(3);
  for (int t = 0; t < 50; ++t) {
    const auto made = make_monotone_triple(f, 64, gen.engine());
    const double threshold = truncation_threshold(f, made.triple.v);
    const auto lambdas = sample_lambdas(made.triple.u, threshold, 20, gen.engine());
    EXPECT_EQ(lambdas.size(), 20u);
    for (double l : lambdas) EXPECT_GE(l, threshold);
  }
}

}  // namespace
