#pragma once

#include <cstddef>
#include <functional>

namespace sepwidth {

/// Process-wide cap on worker threads (the CLI's --threads). Defaults to 1.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(i) for i in [0, count). Work items are independent; callers
/// store per-item results and merge in index order, so the outcome does not
/// depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sepwidth
