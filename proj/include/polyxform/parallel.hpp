#pragma once

#include <cstddef>
#include <functional>

namespace polyxform {

// Worker cap: POLYXFORM_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Runs task(i) for every i in [0, count) on up to `workers` threads. Tasks
// must write only to state they own; completion order is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task, std::size_t workers = 0);

}  // namespace polyxform
