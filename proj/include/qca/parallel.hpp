#pragma once

#include <cstddef>
#include <functional>

namespace qca {

// Worker count: hardware concurrency, capped by QCA_THREADS when set.
unsigned thread_count();

// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks,
// one per worker, so results written by index are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qca
