#pragma once

#include <functional>

namespace tilt {

// 0 means hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n). Callers must make iterations write disjoint
// memory; results then do not depend on the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace tilt
