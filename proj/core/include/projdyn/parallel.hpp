#pragma once

#include <cstddef>
#include <functional>

namespace projdyn {

/// Worker count used by the evaluation grids. 0 means "auto": the
/// PROJDYN_THREADS environment variable if set, else hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, count). Iterations must be independent; the
/// caller is responsible for writing results into disjoint slots.
/// The first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace projdyn
