#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "vmolab/dyadic.hpp"

namespace vmolab::sharp {

using dyadic::PartitionFiltration;
using dyadic::WeightedFunction;

/// Functions u, v and a nonnegative g on one filtration's space.
struct FsTriple {
  WeightedFunction u;
  WeightedFunction v;
  WeightedFunction g;
};

/// Per-cell majorants u^C. Since C_n(x) is unique, u^{C_n(x)}(x) is stored as
/// values[n - n_min][x].
class MajorantFamily {
 public:
  MajorantFamily(const PartitionFiltration& filtration, std::vector<std::vector<double>> values);

  double at(int n, std::size_t atom) const { return values_.at(static_cast<std::size_t>(n - n_min_)).at(atom); }
  int n_min() const noexcept { return n_min_; }
  std::size_t level_count() const noexcept { return values_.size(); }

  /// The family u^C = |u| on every cell, the smallest admissible one (equal to u when u >= 0).
  static MajorantFamily identity(const PartitionFiltration& filtration, const WeightedFunction& u);

 private:
  int n_min_;
  std::vector<std::vector<double>> values_;
};

/// alpha = 1 / (2 N0).
double alpha_constant(double n0);

/// Location of the largest premise violation.
struct CellRef {
  int level = 0;
  std::size_t cell = 0;
  double violation = 0.0;  ///< left side minus right side of the cell inequality
};

struct PremiseCheck {
  bool holds = true;
  std::optional<CellRef> worst;  ///< set when some cell fails
};

/// Checks int_C (u - v_C)_+ <= int_C g on every cell of every level. A cell
/// fails when the excess exceeds tolerance * (1 + |right side|).
PremiseCheck check_premise_monotone(const PartitionFiltration& filtration, const FsTriple& t,
                                    double tolerance = 1e-12);

/// Checks (int_C |u - u_C|) ^ (int_C |u^C - u^C_C|) <= int_C g on every cell.
PremiseCheck check_premise_sharp(const PartitionFiltration& filtration, const FsTriple& t, const MajorantFamily& m,
                                 double tolerance = 1e-12);

/// Which coefficient the distribution inequality carries.
enum class DistributionCoefficient {
  kGeneral,      ///< 2 / lambda
  kNonnegative,  ///< 1 / lambda, valid for u >= 0 under the sharp-mode premise
};

struct DistributionBound {
  double lhs = 0.0;  ///< |{|u| >= lambda}|
  double rhs = 0.0;  ///< c / lambda * int g 1{Mv > alpha lambda}
  double slack() const { return rhs - lhs; }
};

/// Both sides of the distribution inequality at one lambda > 0.
DistributionBound distribution_bound(const PartitionFiltration& filtration, const FsTriple& t, double lambda,
                                     DistributionCoefficient coefficient = DistributionCoefficient::kGeneral);

/// Smallest lambda for which the finite filtration behaves like an infinite
/// one: coarsest-level averages of v are <= alpha * lambda.
double truncation_threshold(const PartitionFiltration& filtration, const WeightedFunction& v);

/// Dyadic sharp function: sup_n of the mean oscillation of u over C_n(x).
WeightedFunction sharp_function(const PartitionFiltration& filtration, const WeightedFunction& u);

/// Mean oscillation of u over cell `cell` of level n: (1/|C|) int_C |u - u_C|.
double mean_oscillation(const PartitionFiltration& filtration, const WeightedFunction& u, int n, std::size_t cell);

/// N(p, N0) = 2 q^p alpha^(1-p), q = p/(p-1), alpha = (2 N0)^-1.
double fs_constant(double p, double n0);

struct NormBound {
  double lhs = 0.0;             ///< ||u||_p^p
  double rhs = 0.0;             ///< N ||g||_p ||v||_p^(p-1)
  double constant = 0.0;        ///< N
  double chebyshev_rhs = 0.0;   ///< 2 q alpha^(1-p) int g (Mv)^(p-1), the intermediate bound
};

NormBound fs_norm_bound(const PartitionFiltration& filtration, const FsTriple& t, double p);

/// ||f||_p^p as the exact layer-cake sum over the distinct values of |f|^p.
double layer_cake_pnorm(const WeightedFunction& f, double p);

/// Minimal g for the monotone premise: g(x) = max_n int_{C_n(x)} (u - v_C)_+ / |C_n(x)|.
WeightedFunction minimal_monotone_g(const PartitionFiltration& filtration, const WeightedFunction& u,
                                    const WeightedFunction& v);

/// Minimal g for the sharp premise: g(x) = max_n min(I_u(C), I_m(C)) / |C| with C = C_n(x).
WeightedFunction minimal_sharp_g(const PartitionFiltration& filtration, const WeightedFunction& u,
                                 const MajorantFamily& m);

/// A triple satisfying one of the premises, built without rejection sampling.
struct GeneratedTriple {
  FsTriple triple;
  std::optional<MajorantFamily> majorants;  ///< present for sharp-mode triples
};

/// Monotone mode: v >= 0 random, u = a v with a in [0,1] per atom, g = minimal
/// admissible g times a per-atom factor in [1, 1.5]. Original atoms are the
/// first `support_atoms` ones; remaining (padding) atoms get u = v = 0.
GeneratedTriple make_monotone_triple(const PartitionFiltration& filtration, std::size_t support_atoms,
                                     std::mt19937_64& rng);

/// Sharp mode: |u| <= v (u >= 0 when `nonnegative`), random majorants between
/// |u| and v per cell, minimal admissible g inflated as above.
GeneratedTriple make_sharp_triple(const PartitionFiltration& filtration, std::size_t support_atoms, bool nonnegative,
                                  std::mt19937_64& rng);


/// Row kinds of the randomized inequality suite.
enum class FsMode { kMonotoneDist, kMonotoneNorm, kSharpDist, kSharpPosDist, kSharpNorm };

std::string_view to_string(FsMode mode);

struct FsRow {
  int trial = 0;
  FsMode mode = FsMode::kMonotoneDist;
  std::optional<double> p;       ///< norm rows only
  double n0 = 0.0;
  std::optional<double> lambda;  ///< distribution rows only
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;             ///< slack >= -1e-12, or lhs <= rhs (1 + 1e-12) for norms
};

/// Filtration of a trial: trials cycle through d = 1 with depths 3..6 and d = 2 with depths 2..3.
PartitionFiltration trial_filtration(int trial, int pad_levels = 10);

/// `count` lambdas above the truncation threshold T: half log-uniform in
/// [T, 1.2 max|u|], half drawn from the values of |u| exceeding T.
std::vector<double> sample_lambdas(const WeightedFunction& u, double threshold, int count, std::mt19937_64& rng);

/// One trial of the suite: a monotone, a sharp and a nonnegative sharp triple on
/// trial_filtration(trial), 20 lambdas per distribution mode and every p for the
/// norm modes. Deterministic in (seed, trial). Throws std::logic_error if a
/// generated triple fails its premise.
std::vector<FsRow> fs_trial(std::uint64_t seed, int trial, std::span<const double> ps, int pad_levels = 10,
                            int lambdas = 20);

}  // namespace vmolab::sharp
