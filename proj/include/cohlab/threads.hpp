#pragma once

#include <cstddef>
#include <functional>

namespace cohlab {

// Worker-thread cap: COHERENCE_LAB_THREADS when set (must be a positive
// integer), otherwise the hardware concurrency.  Throws InvalidParameterError
// on an unparseable value.
std::size_t max_threads();

// Runs fn(i) for i in [0, n).  Work is split into contiguous index blocks, so
// results written to slot i are deterministic regardless of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace cohlab
