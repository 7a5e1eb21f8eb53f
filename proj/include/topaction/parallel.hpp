#pragma once

#include <cstddef>
#include <functional>

namespace topaction {

/// Worker count from TOPACTION_THREADS, else the hardware concurrency (at least 1).
std::size_t default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Exceptions from any worker are rethrown on the caller after all workers join.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace topaction
