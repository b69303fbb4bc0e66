#pragma once

#include <cstddef>
#include <functional>

namespace kstab {

/// Process-wide worker cap for internal parallelism (0 = hardware default).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(0..n-1), possibly concurrently, honoring the worker cap.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

} // namespace kstab
