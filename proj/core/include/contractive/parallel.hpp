#pragma once

#include <cstddef>
#include <functional>

namespace contractive {

/// Worker count from CONTRACTIVE_THREADS (default 1, capped at 256).
std::size_t thread_count();

/// Calls body(i) for i in [0, n). Iterations are split into contiguous blocks,
/// so results written by index are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace contractive
