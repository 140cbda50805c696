#pragma once

#include <memory>
#include <vector>

#include "oracles.hpp"
#include "vmolab/dyadic.hpp"

namespace oracle {

inline vmolab::dyadic::PartitionFiltration to_filtration(const Space& s) {
  return vmolab::dyadic::PartitionFiltration(std::make_shared<const vmolab::dyadic::AtomSpace>(s.weights), s.n_min,
                                             s.levels);
}

inline Space from_filtration(const vmolab::dyadic::PartitionFiltration& f) {
  const auto w = f.space()->weights();
  return Space{std::vector<double>(w.begin(), w.end()), f.cell_lists(), f.n_min()};
}

inline vmolab::dyadic::WeightedFunction on(const vmolab::dyadic::PartitionFiltration& f, std::vector<double> values) {
  return vmolab::dyadic::WeightedFunction(f.space(), std::move(values));
}

}  // namespace oracle
