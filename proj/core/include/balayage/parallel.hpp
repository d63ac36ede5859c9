#pragma once

#include <cstddef>
#include <functional>

namespace balayage {

// Worker count: BAL_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls body(i) for every i in [0, count). Each index is evaluated exactly once
// and callers write into index-addressed slots, so results are identical for
// every thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace balayage
