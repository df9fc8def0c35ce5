#pragma once

#include <cstddef>
#include <functional>

namespace tfm {

// Worker cap: TFMULT_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads. Bodies
// must write to disjoint outputs; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace tfm
