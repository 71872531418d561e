#pragma once

#include <cstddef>
#include <functional>

namespace chernoff {

/// Worker cap: CHERNOFF_KIT_THREADS, where 0 or unset means hardware
/// concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; each writes
/// only its own output slot, so collection order is deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace chernoff
