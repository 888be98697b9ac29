#pragma once

#include <cstddef>
#include <functional>

namespace kp {

/// Worker count: hardware concurrency, capped by the KP_THREADS environment
/// variable when it is set to a positive integer.
unsigned thread_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, one per
/// worker. Each index is processed exactly once and results must be written
/// to per-index slots, so the outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace kp
