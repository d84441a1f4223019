#pragma once

#include <cstddef>
#include <functional>

namespace kgex {

/// Number of worker threads to use when jobs == 0 (hardware concurrency,
/// at least 1).
size_t default_jobs();

/// Runs fn(i) for i in [0, n) across up to `jobs` threads, blocking until
/// all complete. Work is split into contiguous chunks, so results written
/// to slot i are deterministic regardless of thread count. Exceptions from
/// workers are rethrown on the calling thread (first one wins).
void parallel_for(size_t n, size_t jobs, const std::function<void(size_t)>& fn);

} // namespace kgex
