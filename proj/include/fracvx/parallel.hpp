#pragma once

#include <cstddef>
#include <functional>

namespace fracvx {

// Number of worker threads to use. Defaults to the hardware concurrency,
// clamped to [1, 64]; the FRACVX_THREADS environment variable overrides it.
int worker_count();

// Runs body(i) for i in [0, n) across worker_count() threads. Exceptions
// thrown by the body are collected and the first one is rethrown after all
// workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracvx
