#ifndef QLAB_PARALLEL_HPP
#define QLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace qlab {

/// Worker cap: min(hardware_concurrency, QLAB_THREADS) with QLAB_THREADS
/// read once from the environment; at least 1.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) across worker_count() threads. Results must be
/// written to preallocated, per-index storage; the partition is contiguous
/// and deterministic, so reductions done afterwards in index order are
/// reproducible regardless of thread count. Exceptions from workers are
/// rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qlab

#endif
