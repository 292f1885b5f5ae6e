#pragma once

#include <cstddef>
#include <functional>

namespace gdist {

// Worker count used by population-level loops. 0 means "unset": fall back to
// GRAPHON_DIST_THREADS, then to std::thread::hardware_concurrency().
void set_thread_count(std::size_t n);
std::size_t thread_count();

// Calls body(i) for i in [0, count). Work items must be independent; output
// is written by index so the result does not depend on scheduling.
// The first exception thrown by any item is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace gdist
