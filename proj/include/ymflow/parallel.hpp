#pragma once

#include <cstddef>
#include <functional>

namespace ymflow {

/// Worker cap from YMFLOW_THREADS (default: hardware concurrency, at least 1).
int worker_count();

/// Runs fn(begin, end) over disjoint contiguous chunks of [0, n). Chunking
/// depends only on n and the worker count, so results are reproducible.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace ymflow
