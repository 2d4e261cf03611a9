#pragma once

#include <functional>

namespace banditlab {

// Run fn(0..count-1) across up to `jobs` worker threads (jobs <= 1 runs
// inline). Work items must not depend on execution order. The first
// exception thrown by any item is rethrown after all workers finish.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace banditlab
