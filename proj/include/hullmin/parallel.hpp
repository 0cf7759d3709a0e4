#pragma once

#include <cstddef>
#include <functional>

namespace hullmin {

/// Thread cap from HULLMIN_THREADS (default: hardware concurrency, at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; callers write results by index so output order never
/// depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hullmin
