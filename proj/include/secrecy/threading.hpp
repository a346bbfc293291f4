#pragma once

#include <cstddef>
#include <functional>

namespace secrecy {

// Worker count: min(hardware_concurrency, SECRECY_TOOLKIT_THREADS if set),
// at least 1. cap == 0 means "no extra cap".
std::size_t worker_count(std::size_t cap = 0);

// Runs f(i) for i in [0, n) on worker_count(cap) threads. Work is split in
// contiguous chunks; f must only write to per-index state so that results
// do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, std::size_t cap = 0);

}  // namespace secrecy
