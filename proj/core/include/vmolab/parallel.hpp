#pragma once

#include <cstddef>
#include <functional>

namespace vmolab {

/// Worker cap from VMO_LAB_THREADS (unset or invalid -> hardware concurrency).
int thread_limit();

/// Runs body(i) for i in [0, count). Iterations must be independent; callers
/// write results into pre-sized slots so output order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace vmolab
