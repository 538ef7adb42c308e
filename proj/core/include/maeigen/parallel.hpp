#ifndef MAEIGEN_PARALLEL_HPP
#define MAEIGEN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace maeigen {

/// Worker thread cap: value of MAEIGEN_THREADS, where 0 or unset means auto
/// (hardware concurrency).
int worker_thread_count();

/// Runs fn(i) for i in [0, n) on the worker pool with deterministic
/// contiguous chunking. fn must only touch slot i of any shared output.
/// Falls back to a plain loop for small n or a single worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace maeigen

#endif
