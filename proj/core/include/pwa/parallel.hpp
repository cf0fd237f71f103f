#pragma once

#include <functional>

namespace pwa {

/// Worker-pool size: min(PWA_THREADS, hardware threads, tasks), at least 1.
/// PWA_THREADS is read from the environment.
int worker_count(int tasks);

/// Run fn(0..n-1) on a worker pool. Tasks must be independent; writing into
/// per-index slots keeps results deterministic regardless of the pool size.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace pwa
