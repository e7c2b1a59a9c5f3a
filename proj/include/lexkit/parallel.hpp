#pragma once

#include <cstddef>
#include <functional>

namespace lexkit {

// 0 means "pick for me" (hardware concurrency, at least 1).
std::size_t resolve_threads(std::size_t requested);

// Runs fn(i) for i in [0, n) on up to `threads` worker threads. Each index is
// visited exactly once, so callers get deterministic results by writing into
// preallocated slot i regardless of thread interleaving. The first exception
// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace lexkit
