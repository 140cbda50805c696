#include "vmolab/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include <tbb/global_control.h>
#include <tbb/parallel_for.h>

namespace vmolab {

int thread_limit() {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const char* env = std::getenv("VMO_LAB_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  try {
    std::size_t used = 0;
    const int n = std::stoi(env, &used);
    if (used != std::string(env).size() || n < 1) return hw;
    return n;
  } catch (const std::exception&) {
    return hw;
  }
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const int limit = thread_limit();
  if (limit == 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  tbb::global_control cap(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(limit));
  tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { body(i); });
}

}  // namespace vmolab
