#pragma once

#include <cstddef>
#include <functional>

namespace zmc {

// Worker count: hardware concurrency, capped by ZMC_NOID_THREADS when set.
unsigned worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads. Each index
// is visited exactly once; callers write into per-index slots, so results do not
// depend on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace zmc
