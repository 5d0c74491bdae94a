#pragma once

#include <cstddef>
#include <functional>

namespace zetalab {

// Worker count used by parallel_for. Initialised from ZETALAB_THREADS (or the
// hardware concurrency) on first use; set_thread_count overrides it.
unsigned thread_count();
void set_thread_count(unsigned n);

// Calls body(i) for i in [0, n). Indices are split into contiguous chunks,
// one per worker; body must only write to slots owned by its index. The first
// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace zetalab
