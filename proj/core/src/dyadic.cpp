#include "vmolab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vmolab/error.hpp"

namespace vmolab::dyadic {

AtomSpace::AtomSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidArgument("atom space needs at least one atom");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("atom weights must be finite and positive");
    total_ += w;
  }
}

WeightedFunction::WeightedFunction(std::shared_ptr<const AtomSpace> s, std::vector<double> v)
    : space(std::move(s)), values(std::move(v)) {
  if (!space) throw InvalidArgument("weighted function without a space");
  if (values.size() != space->size()) {
    throw InvalidArgument("function has " + std::to_string(values.size()) + " values for " +
                          std::to_string(space->size()) + " atoms");
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw InvalidArgument("function values must be finite");
  }
}

WeightedFunction WeightedFunction::constant(std::shared_ptr<const AtomSpace> s, double c) {
  const std::size_t n = s ? s->size() : 0;
  return WeightedFunction(std::move(s), std::vector<double>(n, c));
}

PartitionFiltration::PartitionFiltration(std::shared_ptr<const AtomSpace> space, int n_min)
    : space_(std::move(space)), n_min_(n_min) {
  if (!space_) throw InvalidArgument("filtration without a space");
}

PartitionFiltration::PartitionFiltration(
    std::shared_ptr<const AtomSpace> space, int n_min,
    const std::vector<std::vector<std::vector<std::size_t>>>& levels)
    : PartitionFiltration(std::move(space), n_min) {
  const std::size_t atoms = space_->size();
  std::vector<std::vector<std::size_t>> assignment;
  assignment.reserve(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::vector<std::size_t> cell_of(atoms, SIZE_MAX);
    for (std::size_t c = 0; c < levels[k].size(); ++c) {
      if (levels[k][c].empty()) throw InvalidArgument("empty cell at level " + std::to_string(n_min + static_cast<int>(k)));
      for (std::size_t a : levels[k][c]) {
        if (a >= atoms) throw InvalidArgument("atom index out of range");
        if (cell_of[a] != SIZE_MAX) {
          throw InvalidArgument("atom " + std::to_string(a) + " lies in two cells of level " +
                                std::to_string(n_min + static_cast<int>(k)));
        }
        cell_of[a] = c;
      }
    }
    assignment.push_back(std::move(cell_of));
  }
  build(std::move(assignment));
}

PartitionFiltration PartitionFiltration::from_assignments(
    std::shared_ptr<const AtomSpace> space, int n_min,
    std::vector<std::vector<std::size_t>> cell_of_atom) {
  PartitionFiltration f(std::move(space), n_min);
  f.build(std::move(cell_of_atom));
  return f;
}

void PartitionFiltration::build(std::vector<std::vector<std::size_t>> cell_of_atom) {
  if (cell_of_atom.empty()) throw InvalidArgument("filtration needs at least one level");
  const std::size_t atoms = space_->size();
  const auto w = space_->weights();
  levels_.clear();
  levels_.reserve(cell_of_atom.size());

  for (std::size_t k = 0; k < cell_of_atom.size(); ++k) {
    const int n = n_min_ + static_cast<int>(k);
    auto& assign = cell_of_atom[k];
    if (assign.size() != atoms) throw InvalidArgument("level " + std::to_string(n) + " does not assign every atom");
    std::size_t cells = 0;
    for (std::size_t c : assign) {
      if (c == SIZE_MAX) throw InvalidArgument("level " + std::to_string(n) + " does not cover every atom");
      cells = std::max(cells, c + 1);
    }
    Level level;
    level.offsets.assign(cells + 1, 0);
    for (std::size_t c : assign) ++level.offsets[c + 1];
    for (std::size_t c = 0; c < cells; ++c) {
      if (level.offsets[c + 1] == 0) throw InvalidArgument("level " + std::to_string(n) + " has an empty cell id");
      level.offsets[c + 1] += level.offsets[c];
    }
    level.atoms.resize(atoms);
    std::vector<std::size_t> cursor(level.offsets.begin(), level.offsets.end() - 1);
    level.measure.assign(cells, 0.0);
    for (std::size_t a = 0; a < atoms; ++a) {
      level.atoms[cursor[assign[a]]++] = a;
      level.measure[assign[a]] += w[a];
    }
    level.cell_of_atom = std::move(assign);

    if (k > 0) {
      const Level& coarse = levels_.back();
      level.parent.assign(cells, SIZE_MAX);
      for (std::size_t a = 0; a < atoms; ++a) {
        const std::size_t c = level.cell_of_atom[a];
        const std::size_t p = coarse.cell_of_atom[a];
        if (level.parent[c] == SIZE_MAX) {
          level.parent[c] = p;
        } else if (level.parent[c] != p) {
          throw InvalidArgument("level " + std::to_string(n) + " is not nested in level " + std::to_string(n - 1));
        }
      }
      for (std::size_t c = 0; c < cells; ++c) {
        regularity_ = std::max(regularity_, coarse.measure[level.parent[c]] / level.measure[c]);
      }
    }
    levels_.push_back(std::move(level));
  }

  if (levels_.back().measure.size() != atoms) {
    throw InvalidArgument("finest level must consist of single atoms");
  }
}

const PartitionFiltration::Level& PartitionFiltration::level(int n) const {
  if (!has_level(n)) {
    throw std::out_of_range("level " + std::to_string(n) + " outside [" + std::to_string(n_min()) + ", " +
                            std::to_string(n_max()) + "]");
  }
  return levels_[static_cast<std::size_t>(n - n_min_)];
}

std::span<const std::size_t> PartitionFiltration::cell_atoms(int n, std::size_t cell) const {
  const Level& l = level(n);
  if (cell + 1 >= l.offsets.size()) throw std::out_of_range("cell index out of range");
  return std::span<const std::size_t>(l.atoms).subspan(l.offsets[cell], l.offsets[cell + 1] - l.offsets[cell]);
}

std::size_t PartitionFiltration::parent_of(int n, std::size_t cell) const {
  if (n <= n_min_) throw std::out_of_range("coarsest level has no parent");
  return level(n).parent.at(cell);
}

std::vector<std::vector<std::vector<std::size_t>>> PartitionFiltration::cell_lists() const {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for (int n = n_min(); n <= n_max(); ++n) {
    std::vector<std::vector<std::size_t>> cells;
    for (std::size_t c = 0; c < cell_count(n); ++c) {
      auto atoms = cell_atoms(n, c);
      cells.emplace_back(atoms.begin(), atoms.end());
    }
    out.push_back(std::move(cells));
  }
  return out;
}

void require_same_space(const PartitionFiltration& filtration, const WeightedFunction& f) {
  if (f.space == filtration.space()) return;
  if (!f.space || !(*f.space == *filtration.space())) {
    throw InvalidArgument("function and filtration live on different atom spaces");
  }
}

PartitionFiltration build_dyadic_filtration(int dimension, int depth, std::size_t atom_cap) {
  if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
  if (depth < 1) throw InvalidArgument("depth must be >= 1");
  const long long bits = static_cast<long long>(dimension) * depth;
  if (bits >= 62 || (std::size_t{1} << bits) > atom_cap) {
    throw CapacityError("dyadic filtration with d=" + std::to_string(dimension) + ", depth=" +
                        std::to_string(depth) + " exceeds the atom cap");
  }
  const std::size_t atoms = std::size_t{1} << bits;
  const double weight = std::ldexp(1.0, static_cast<int>(-bits));
  auto space = std::make_shared<const AtomSpace>(std::vector<double>(atoms, weight));

  const std::size_t side = std::size_t{1} << depth;
  std::vector<std::vector<std::size_t>> assignment(static_cast<std::size_t>(depth) + 1,
                                                   std::vector<std::size_t>(atoms));
  std::vector<std::size_t> coord(static_cast<std::size_t>(dimension));
  for (std::size_t a = 0; a < atoms; ++a) {
    std::size_t rest = a;
    for (int k = dimension - 1; k >= 0; --k) {
      coord[static_cast<std::size_t>(k)] = rest % side;
      rest /= side;
    }
    for (int n = 0; n <= depth; ++n) {
      const int shift = depth - n;
      const std::size_t level_side = std::size_t{1} << n;
      std::size_t cell = 0;
      for (int k = 0; k < dimension; ++k) cell = cell * level_side + (coord[static_cast<std::size_t>(k)] >> shift);
      assignment[static_cast<std::size_t>(n)][a] = cell;
    }
  }
  return PartitionFiltration::from_assignments(std::move(space), 0, std::move(assignment));
}

namespace {

std::vector<double> cell_sums(const PartitionFiltration& F, std::span<const double> values, int n) {
  std::vector<double> sums(F.cell_count(n), 0.0);
  const auto w = F.space()->weights();
  for (std::size_t a = 0; a < values.size(); ++a) sums[F.cell_of(n, a)] += values[a] * w[a];
  return sums;
}

std::vector<double> averages_on_atoms(const PartitionFiltration& F, std::span<const double> values, int n) {
  auto sums = cell_sums(F, values, n);
  for (std::size_t c = 0; c < sums.size(); ++c) {
    const double m = F.cell_measure(n, c);
    sums[c] = m > 0.0 ? sums[c] / m : 0.0;  // 0/0 := 0
  }
  std::vector<double> out(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    const std::size_t c = F.cell_of(n, a);
    // singleton cells return the value itself, bit for bit
    out[a] = F.cell_atoms(n, c).size() == 1 && F.cell_measure(n, c) > 0.0 ? values[a] : sums[c];
  }
  return out;
}

}  // namespace

WeightedFunction conditional_average(const PartitionFiltration& filtration, const WeightedFunction& f, int n) {
  require_same_space(filtration, f);
  if (!filtration.has_level(n)) throw std::out_of_range("level " + std::to_string(n) + " outside filtration");
  return WeightedFunction(f.space, averages_on_atoms(filtration, f.values, n));
}

StoppingTimeMap stopping_time_first_exceed(const PartitionFiltration& filtration, const WeightedFunction& g,
                                           double lambda) {
  require_same_space(filtration, g);
  std::vector<int> tau(g.size(), StoppingTimeMap::kInfinity);
  std::size_t open = g.size();
  for (int n = filtration.n_min(); n <= filtration.n_max() && open > 0; ++n) {
    const auto avg = averages_on_atoms(filtration, g.values, n);
    for (std::size_t a = 0; a < avg.size(); ++a) {
      if (tau[a] == StoppingTimeMap::kInfinity && avg[a] > lambda) {
        tau[a] = n;
        --open;
      }
    }
  }
  return StoppingTimeMap(std::move(tau));
}

WeightedFunction evaluate_given_tau(const PartitionFiltration& filtration, const WeightedFunction& f,
                                    const StoppingTimeMap& tau) {
  require_same_space(filtration, f);
  if (tau.size() != f.size()) throw InvalidArgument("stopping time and function sizes differ");
  std::vector<double> out = f.values;
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    bool used = false;
    for (std::size_t a = 0; a < tau.size() && !used; ++a) used = tau.level(a) == n;
    if (!used) continue;
    const auto avg = averages_on_atoms(filtration, f.values, n);
    for (std::size_t a = 0; a < tau.size(); ++a) {
      if (tau.level(a) == n) out[a] = avg[a];
    }
  }
  return WeightedFunction(f.space, std::move(out));
}

WeightedFunction dyadic_maximal(const PartitionFiltration& filtration, const WeightedFunction& f) {
  require_same_space(filtration, f);
  std::vector<double> abs_f(f.size());
  std::transform(f.values.begin(), f.values.end(), abs_f.begin(), [](double x) { return std::abs(x); });
  std::vector<double> out(f.size(), 0.0);
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    const auto avg = averages_on_atoms(filtration, abs_f, n);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = std::max(out[a], avg[a]);
  }
  return WeightedFunction(f.space, std::move(out));
}

bool is_stopping_time(const PartitionFiltration& filtration, const StoppingTimeMap& tau) {
  if (tau.size() != filtration.atom_count()) return false;
  for (std::size_t a = 0; a < tau.size(); ++a) {
    if (tau.finite(a) && !filtration.has_level(tau.level(a))) return false;
  }
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    for (std::size_t c = 0; c < filtration.cell_count(n); ++c) {
      const auto atoms = filtration.cell_atoms(n, c);
      const bool first = tau.level(atoms.front()) == n;
      for (std::size_t a : atoms) {
        if ((tau.level(a) == n) != first) return false;
      }
    }
  }
  return true;
}

PartitionFiltration pad_with_zero_levels(const PartitionFiltration& filtration, int k, std::size_t atom_cap) {
  if (k < 0) throw InvalidArgument("padding level count must be >= 0");
  if (k == 0) return filtration;
  const std::size_t old_atoms = filtration.atom_count();
  if (old_atoms + static_cast<std::size_t>(k) > atom_cap) throw CapacityError("padding exceeds the atom cap");

  std::vector<double> weights(filtration.space()->weights().begin(), filtration.space()->weights().end());
  double total = filtration.space()->total_measure();
  for (int j = 0; j < k; ++j) {
    weights.push_back(total);
    total *= 2.0;
  }
  const std::size_t atoms = weights.size();
  auto space = std::make_shared<const AtomSpace>(std::move(weights));

  // Padded level n_min - m (m = 1..k) has cell 0 = original atoms plus padding
  // atoms 0..m-1, and singleton cells for the later padding atoms. Original
  // levels keep their cells and give every padding atom its own cell.
  std::vector<std::vector<std::size_t>> assignment;
  assignment.reserve(filtration.level_count() + static_cast<std::size_t>(k));
  for (int m = k; m >= 1; --m) {
    const auto joined = static_cast<std::size_t>(m);
    std::vector<std::size_t> cell(atoms);
    for (std::size_t a = 0; a < old_atoms; ++a) cell[a] = 0;
    std::size_t next = 1;
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
      cell[old_atoms + j] = j < joined ? 0 : next++;
    }
    assignment.push_back(std::move(cell));
  }
  for (int n = filtration.n_min(); n <= filtration.n_max(); ++n) {
    std::vector<std::size_t> cell(atoms);
    for (std::size_t a = 0; a < old_atoms; ++a) cell[a] = filtration.cell_of(n, a);
    std::size_t next = filtration.cell_count(n);
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) cell[old_atoms + j] = next++;
    assignment.push_back(std::move(cell));
  }
  return PartitionFiltration::from_assignments(std::move(space), filtration.n_min() - k, std::move(assignment));
}

WeightedFunction zero_extend(const WeightedFunction& f, std::shared_ptr<const AtomSpace> padded) {
  if (!padded || padded->size() < f.size()) throw InvalidArgument("padded space is smaller than the function's space");
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (padded->weight(a) != f.space->weight(a)) throw InvalidArgument("padded space does not extend the function's space");
  }
  std::vector<double> values(padded->size(), 0.0);
  std::copy(f.values.begin(), f.values.end(), values.begin());
  return WeightedFunction(std::move(padded), std::move(values));
}

double integral(const WeightedFunction& f) {
  const auto w = f.space->weights();
  double s = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) s += f.values[a] * w[a];
  return s;
}

double lp_norm(const WeightedFunction& f, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  const auto w = f.space->weights();
  double s = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) s += std::pow(std::abs(f.values[a]), p) * w[a];
  return std::pow(s, 1.0 / p);
}

double level_set_measure(const WeightedFunction& f, double t) {
  const auto w = f.space->weights();
  double s = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (std::abs(f.values[a]) >= t) s += w[a];
  }
  return s;
}

nlohmann::json to_json(const PartitionFiltration& filtration) {
  const auto w = filtration.space()->weights();
  return nlohmann::json{{"weights", std::vector<double>(w.begin(), w.end())},
                        {"levels", filtration.cell_lists()},
                        {"n_min", filtration.n_min()}};
}

PartitionFiltration filtration_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("levels")) {
    throw InvalidArgument("filtration JSON needs \"weights\" and \"levels\"");
  }
  auto space = std::make_shared<const AtomSpace>(j.at("weights").get<std::vector<double>>());
  const int n_min = j.value("n_min", 0);
  return PartitionFiltration(std::move(space), n_min,
                             j.at("levels").get<std::vector<std::vector<std::vector<std::size_t>>>>());
}

nlohmann::json to_json(const WeightedFunction& f) { return nlohmann::json{{"values", f.values}}; }

WeightedFunction function_from_json(const nlohmann::json& j, std::shared_ptr<const AtomSpace> space) {
  if (!j.is_object() || !j.contains("values")) throw InvalidArgument("function JSON needs \"values\"");
  return WeightedFunction(std::move(space), j.at("values").get<std::vector<double>>());
}

}  // namespace vmolab::dyadic
