#pragma once

#include <cstddef>
#include <functional>

namespace clusterforge {

/// Worker cap: CLUSTERFORGE_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
int default_thread_count();

/// Runs fn(chunk) for chunk in [0, chunks) on up to `threads` workers.
/// Chunks are claimed dynamically; callers that need reproducible results
/// must write per-chunk outputs and merge them in chunk order.
void run_chunks(std::size_t chunks, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace clusterforge
