#pragma once

#include <cstddef>
#include <functional>

namespace ccclt {

/// Worker count: CCCLT_WORKERS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for every i in [0, count) on up to `workers` threads.
/// Indices are handed out dynamically, so body must only write to state owned
/// by index i. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace ccclt
