#pragma once

#include <cstddef>
#include <functional>

namespace echolab {

/// Name of the environment variable that caps worker threads.
inline constexpr const char* kThreadsEnv = "ECHOLAB_THREADS";

/// Number of workers to use: `requested` if nonzero, else the value of
/// ECHOLAB_THREADS, else all hardware threads.
unsigned worker_count(unsigned requested = 0);

/// Calls body(i) for every i in [0, n) on up to `threads` workers.
///
/// Work is handed out in index order from a shared counter; callers write
/// results into per-index slots and reduce afterwards, so output never
/// depends on the schedule. The first exception thrown by any body is
/// rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace echolab
