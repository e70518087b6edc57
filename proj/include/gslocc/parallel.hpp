#pragma once

#include <cstddef>
#include <functional>

namespace gslocc {

/// Worker count: hardware concurrency, capped by the GSLOCC_THREADS
/// environment variable when it holds a positive integer.
unsigned worker_count();

/// Calls body(i) for every i in [0, count), split into contiguous chunks
/// across worker_count() threads. body must only write to slot i of its
/// output. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gslocc
