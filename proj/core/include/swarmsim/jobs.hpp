#pragma once

#include <cstdint>
#include <functional>

namespace swarmsim {

/// Hardware thread count, at least 1.
int available_parallelism();

/// Runs fn(0..count-1) across up to `threads` workers pulling indices from a
/// shared counter. threads <= 1 degenerates to a plain loop. The first
/// exception thrown by any job is rethrown after all workers join. Callers
/// provide per-index output slots, so results are ordered regardless of
/// completion order.
void run_indexed_jobs(int64_t count, int threads, const std::function<void(int64_t)>& fn);

}  // namespace swarmsim
