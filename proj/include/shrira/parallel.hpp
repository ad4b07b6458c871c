#pragma once

#include <cstddef>
#include <functional>

namespace shrira {

/// Worker count: SHRIRA_THREADS if set (>= 1), else the hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n) across thread_count() workers. Callers write
/// results into slot i so the outcome does not depend on scheduling. The first
/// exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace shrira
