#pragma once

#include <cstddef>
#include <functional>

namespace runge {

// Worker count: RUNGE_THREADS if set, else the hardware concurrency (at most 8).
int thread_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots so
// the outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace runge
