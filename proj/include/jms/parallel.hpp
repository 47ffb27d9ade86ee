#pragma once

#include <cstddef>
#include <functional>

namespace jms {

/// Worker count: JMS_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is visited exactly once; the first exception thrown is rethrown.
/// Nested calls from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace jms
