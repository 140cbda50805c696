#pragma once

// Brute-force reference computations and hand-rolled generators for the tests.
// Nothing here calls into the library's algorithms: cells come in as plain atom
// lists and every quantity is recomputed by direct enumeration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Cells = std::vector<std::vector<std::size_t>>;  // one level
using Levels = std::vector<Cells>;                    // coarsest first

struct Space {
  std::vector<double> weights;
  Levels levels;
  int n_min = 0;
};

inline const std::vector<std::size_t>& cell_containing(const Cells& cells, std::size_t atom) {
  for (const auto& c : cells) {
    if (std::find(c.begin(), c.end(), atom) != c.end()) return c;
  }
  throw std::logic_error("atom not covered");
}

inline double cell_measure(const Space& s, const std::vector<std::size_t>& cell) {
  long double m = 0.0L;
  for (auto a : cell) m += s.weights[a];
  return static_cast<double>(m);
}

inline double cell_mean(const Space& s, const std::vector<std::size_t>& cell, const std::vector<double>& f) {
  long double num = 0.0L;
  long double den = 0.0L;
  for (auto a : cell) {
    num += static_cast<long double>(f[a]) * s.weights[a];
    den += s.weights[a];
  }
  return den > 0.0L ? static_cast<double>(num / den) : 0.0;
}

/// f_{|n} by scanning for each atom's cell.
inline std::vector<double> average(const Space& s, const std::vector<double>& f, int n) {
  const auto& cells = s.levels.at(static_cast<std::size_t>(n - s.n_min));
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = cell_mean(s, cell_containing(cells, x), f);
  return out;
}

inline std::vector<double> maximal(const Space& s, const std::vector<double>& f) {
  std::vector<double> absf(f.size());
  std::transform(f.begin(), f.end(), absf.begin(), [](double v) { return std::abs(v); });
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 0; k < s.levels.size(); ++k) {
    const auto avg = average(s, absf, s.n_min + static_cast<int>(k));
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = std::max(out[x], avg[x]);
  }
  return out;
}

inline double mean_oscillation(const Space& s, const std::vector<std::size_t>& cell, const std::vector<double>& u) {
  const double mean = cell_mean(s, cell, u);
  long double num = 0.0L;
  long double den = 0.0L;
  for (auto a : cell) {
    num += std::abs(static_cast<long double>(u[a]) - mean) * s.weights[a];
    den += s.weights[a];
  }
  return den > 0.0L ? static_cast<double>(num / den) : 0.0;
}

inline std::vector<double> sharp(const Space& s, const std::vector<double>& u) {
  std::vector<double> out(u.size(), 0.0);
  for (const auto& cells : s.levels) {
    for (std::size_t x = 0; x < u.size(); ++x) {
      out[x] = std::max(out[x], mean_oscillation(s, cell_containing(cells, x), u));
    }
  }
  return out;
}

inline constexpr int kNever = std::numeric_limits<int>::max();

inline std::vector<int> first_exceed(const Space& s, const std::vector<double>& g, double lambda) {
  std::vector<int> tau(g.size(), kNever);
  for (std::size_t x = 0; x < g.size(); ++x) {
    for (std::size_t k = 0; k < s.levels.size(); ++k) {
      if (cell_mean(s, cell_containing(s.levels[k], x), g) > lambda) {
        tau[x] = s.n_min + static_cast<int>(k);
        break;
      }
    }
  }
  return tau;
}

inline double level_set_measure(const Space& s, const std::vector<double>& u, double lambda) {
  long double m = 0.0L;
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (std::abs(u[x]) >= lambda) m += s.weights[x];
  }
  return static_cast<double>(m);
}

inline double lp_norm(const Space& s, const std::vector<double>& f, double p) {
  long double acc = 0.0L;
  for (std::size_t x = 0; x < f.size(); ++x) acc += std::pow(std::abs(static_cast<long double>(f[x])), p) * s.weights[x];
  return static_cast<double>(std::pow(acc, 1.0L / p));
}

/// Largest |parent| / |child| over all parent-child pairs.
inline double regularity(const Space& s) {
  double n0 = 1.0;
  for (std::size_t k = 1; k < s.levels.size(); ++k) {
    for (const auto& child : s.levels[k]) {
      const auto& parent = cell_containing(s.levels[k - 1], child.front());
      n0 = std::max(n0, cell_measure(s, parent) / cell_measure(s, child));
    }
  }
  return n0;
}

/// Dyadic intervals (d = 1) or squares (d = 2) enumerated from coordinates.
inline Space dyadic_space(int d, int depth) {
  const std::size_t side = std::size_t{1} << depth;
  const std::size_t atoms = d == 1 ? side : side * side;
  Space s;
  s.weights.assign(atoms, 1.0 / static_cast<double>(atoms));
  for (int n = 0; n <= depth; ++n) {
    const std::size_t shift = static_cast<std::size_t>(depth - n);
    const std::size_t per_axis = std::size_t{1} << n;
    Cells cells(d == 1 ? per_axis : per_axis * per_axis);
    for (std::size_t a = 0; a < atoms; ++a) {
      const std::size_t i = d == 1 ? a : a / side;
      const std::size_t j = d == 1 ? 0 : a % side;
      const std::size_t key = d == 1 ? (i >> shift) : (i >> shift) * per_axis + (j >> shift);
      cells[key].push_back(a);
    }
    s.levels.push_back(std::move(cells));
  }
  return s;
}

/// Hand-rolled generator over a seeded engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<double> reals(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  /// Values that sometimes repeat and sometimes vanish, to exercise ties.
  std::vector<double> lumpy(std::size_t n, double scale) {
    std::vector<double> v(n);
    for (auto& x : v) {
      switch (integer(0, 3)) {
        case 0: x = 0.0; break;
        case 1: x = scale; break;
        default: x = uniform(-scale, scale);
      }
    }
    return v;
  }

  /// Random nested partitions of `atoms` weighted atoms. Levels are formed by
  /// merging runs of 1..3 consecutive cells of a shuffled order until one cell remains.
  Space filtration(std::size_t atoms, bool uniform_weights = false) {
    Space s;
    s.weights = uniform_weights ? std::vector<double>(atoms, 1.0) : reals(atoms, 0.25, 4.0);
    std::vector<std::size_t> order(atoms);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng_);
    Cells level;
    for (auto a : order) level.push_back({a});
    std::vector<Cells> fine_first{level};
    while (level.size() > 1) {
      Cells next;
      for (std::size_t i = 0; i < level.size();) {
        const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(integer(1, 3)), level.size() - i);
        std::vector<std::size_t> merged;
        for (std::size_t k = 0; k < take; ++k) merged.insert(merged.end(), level[i + k].begin(), level[i + k].end());
        next.push_back(std::move(merged));
        i += take;
      }
      if (next.size() == level.size()) continue;  // no merge happened; draw again
      level = next;
      fine_first.push_back(level);
    }
    s.levels.assign(fine_first.rbegin(), fine_first.rend());
    s.n_min = integer(-3, 3);
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

/// (2 - 2 cos(2 pi h)) / h^2: minus the second-difference symbol on sin(2 pi x).
inline double sine_symbol(double h) { return (2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * h)) / (h * h); }

using Rational = boost::multiprecision::cpp_rational;

/// Exact 2^-k.
inline Rational dyadic(int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r /= 2;
  return r;
}

/// Exact kappa^-r for an integer kappa.
inline Rational inverse_power(int kappa, int r) {
  Rational v = 1;
  for (int i = 0; i < r; ++i) v /= kappa;
  return v;
}

/// |(a, a + side) x (b, b + side) cap (lo, hi)^2|, exact.
inline Rational square_overlap(const Rational& a, const Rational& b, const Rational& side, const Rational& lo,
                               const Rational& hi) {
  auto span = [&](const Rational& start) {
    const Rational left = start > lo ? start : lo;
    const Rational right = start + side < hi ? start + side : hi;
    return right > left ? Rational(right - left) : Rational(0);
  };
  return span(a) * span(b);
}

/// Least k with the open square meeting Q_k = (kappa^-k / 2, kappa^-k)^2, searched up to `max_k`.
inline std::optional<int> tau(const Rational& a, const Rational& b, const Rational& side, int kappa, int max_k) {
  for (int k = 0; k <= max_k; ++k) {
    const Rational hi = inverse_power(kappa, k);
    if (square_overlap(a, b, side, hi / 2, hi) > 0) return k;
  }
  return std::nullopt;
}

/// sum_{tau < i <= last} |Q cap Q_i| exactly.
inline Rational tail_sum(const Rational& a, const Rational& b, const Rational& side, int kappa, int tau, int last) {
  Rational sum = 0;
  for (int i = tau + 1; i <= last; ++i) {
    const Rational hi = inverse_power(kappa, i);
    sum += square_overlap(a, b, side, hi / 2, hi);
  }
  return sum;
}

}  // namespace oracle
