#pragma once

#include <cstddef>
#include <functional>

namespace leocap {

// Runs fn(i) for i in [0, count) on a bounded pool of worker threads.
// Callers write results into pre-sized slots indexed by i, so output
// ordering never depends on scheduling. jobs == 0 picks the hardware
// concurrency. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace leocap
