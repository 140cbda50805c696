#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace vmolab::dyadic {

/// Default cap on the number of atoms any constructor may produce.
inline constexpr std::size_t kDefaultAtomCap = std::size_t{1} << 22;

/// A finite measure space made of weighted atoms.
class AtomSpace {
 public:
  explicit AtomSpace(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t atom) const { return weights_.at(atom); }
  double total_measure() const noexcept { return total_; }

  bool operator==(const AtomSpace& other) const noexcept { return weights_ == other.weights_; }

 private:
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// Real values on the atoms of a space. Immutable space, mutable values.
struct WeightedFunction {
  std::shared_ptr<const AtomSpace> space;
  std::vector<double> values;

  WeightedFunction(std::shared_ptr<const AtomSpace> s, std::vector<double> v);
  static WeightedFunction constant(std::shared_ptr<const AtomSpace> s, double c);

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Nested partitions C_n, n = n_min..n_max, of an atom space. The finest level
/// consists of singletons; every cell has a unique parent one level up.
class PartitionFiltration {
 public:
  /// `levels[k]` lists the cells (as atom-index lists) of level n_min + k,
  /// coarsest first. Validates disjointness, coverage, nesting, and singleton
  /// finest cells; the regularity constant is the largest parent/child ratio.
  PartitionFiltration(std::shared_ptr<const AtomSpace> space, int n_min,
                      const std::vector<std::vector<std::vector<std::size_t>>>& levels);

  /// Same validation, from per-level atom->cell assignments with cell ids 0..count-1.
  static PartitionFiltration from_assignments(std::shared_ptr<const AtomSpace> space, int n_min,
                                              std::vector<std::vector<std::size_t>> cell_of_atom);

  const std::shared_ptr<const AtomSpace>& space() const noexcept { return space_; }
  std::size_t atom_count() const noexcept { return space_->size(); }

  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_min_ + static_cast<int>(levels_.size()) - 1; }
  std::size_t level_count() const noexcept { return levels_.size(); }
  bool has_level(int n) const noexcept { return n >= n_min() && n <= n_max(); }

  std::size_t cell_count(int n) const { return level(n).offsets.size() - 1; }
  std::size_t cell_of(int n, std::size_t atom) const { return level(n).cell_of_atom.at(atom); }
  std::span<const std::size_t> cell_atoms(int n, std::size_t cell) const;
  double cell_measure(int n, std::size_t cell) const { return level(n).measure.at(cell); }
  /// Cell of level n-1 containing `cell` of level n. Requires n > n_min.
  std::size_t parent_of(int n, std::size_t cell) const;

  /// N0: sup over parent/child pairs of |parent| / |child| (1 when no level splits).
  double regularity() const noexcept { return regularity_; }

  /// Cells of every level, coarsest first, for serialization.
  std::vector<std::vector<std::vector<std::size_t>>> cell_lists() const;

 private:
  struct Level {
    std::vector<std::size_t> cell_of_atom;
    std::vector<std::size_t> offsets;  // CSR offsets into atoms
    std::vector<std::size_t> atoms;
    std::vector<double> measure;
    std::vector<std::size_t> parent;
  };

  PartitionFiltration(std::shared_ptr<const AtomSpace> space, int n_min);
  void build(std::vector<std::vector<std::size_t>> cell_of_atom);
  const Level& level(int n) const;

  std::shared_ptr<const AtomSpace> space_;
  int n_min_;
  std::vector<Level> levels_;
  double regularity_ = 1.0;
};

/// Per-atom stopping level; `kInfinity` marks atoms where the time never stops.
class StoppingTimeMap {
 public:
  static constexpr int kInfinity = std::numeric_limits<int>::max();

  explicit StoppingTimeMap(std::vector<int> levels) : levels_(std::move(levels)) {}

  std::size_t size() const noexcept { return levels_.size(); }
  int level(std::size_t atom) const { return levels_.at(atom); }
  bool finite(std::size_t atom) const { return levels_.at(atom) != kInfinity; }
  std::span<const int> levels() const noexcept { return levels_; }

 private:
  std::vector<int> levels_;
};

/// Filtration of dyadic cubes of [0,1)^d down to cubes of side 2^-depth.
/// Atoms are the finest cubes in row-major order (last axis fastest), each of
/// weight 2^(-d*depth); levels run 0..depth and N0 = 2^d.
PartitionFiltration build_dyadic_filtration(int dimension, int depth,
                                            std::size_t atom_cap = kDefaultAtomCap);

/// f_{|n}: on each cell of C_n the weighted mean of f over that cell.
WeightedFunction conditional_average(const PartitionFiltration& filtration,
                                     const WeightedFunction& f, int n);

/// tau(x) = least n with g_{|n}(x) > lambda, or infinity.
StoppingTimeMap stopping_time_first_exceed(const PartitionFiltration& filtration,
                                           const WeightedFunction& g, double lambda);

/// f_{|tau}: f_{|tau(x)}(x) where tau is finite, f(x) elsewhere.
WeightedFunction evaluate_given_tau(const PartitionFiltration& filtration,
                                    const WeightedFunction& f, const StoppingTimeMap& tau);

/// Dyadic maximal function sup_n |f|_{|n}.
WeightedFunction dyadic_maximal(const PartitionFiltration& filtration, const WeightedFunction& f);

/// True iff {tau = n} is a union of whole C_n cells for every level n and all
/// finite values lie in the level range.
bool is_stopping_time(const PartitionFiltration& filtration, const StoppingTimeMap& tau);

/// Prepends k coarser levels. Each new level is a single cell joining the
/// current space with one fresh atom of equal measure, so total measure doubles
/// per level and any zero-extended function's coarsest average halves. Original
/// atoms keep their indices; new atoms are appended. N0 becomes max(N0, 2) when
/// the coarsest level is a single cell (it is recomputed in general).
PartitionFiltration pad_with_zero_levels(const PartitionFiltration& filtration, int k,
                                         std::size_t atom_cap = kDefaultAtomCap);

/// Extends f by zero onto a padded space whose leading atoms are f's atoms.
WeightedFunction zero_extend(const WeightedFunction& f, std::shared_ptr<const AtomSpace> padded);

double integral(const WeightedFunction& f);
/// (sum |f|^p w)^(1/p), p >= 1.
double lp_norm(const WeightedFunction& f, double p);
/// Measure of {x : |f(x)| >= t}.
double level_set_measure(const WeightedFunction& f, double t);

/// Throws InvalidArgument unless f lives on the filtration's space.
void require_same_space(const PartitionFiltration& filtration, const WeightedFunction& f);

// JSON: {"weights": [...], "levels": [[[atoms], ...], ...], "n_min": 0}
nlohmann::json to_json(const PartitionFiltration& filtration);
PartitionFiltration filtration_from_json(const nlohmann::json& j);
// JSON: {"values": [...]}
nlohmann::json to_json(const WeightedFunction& f);
WeightedFunction function_from_json(const nlohmann::json& j, std::shared_ptr<const AtomSpace> space);

}  // namespace vmolab::dyadic
