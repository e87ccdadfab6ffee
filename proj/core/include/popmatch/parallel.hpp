#pragma once

#include <cstdint>
#include <functional>

namespace popmatch {

/// max(1, std::thread::hardware_concurrency()).
unsigned hardware_threads();

/// Runs body(i) for i in [0, count) across up to `threads` workers in
/// contiguous chunks. Callers index into preallocated result slots, so the
/// outcome is identical for every thread count. The first exception thrown by
/// a worker is rethrown after all workers join.
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body);

}  // namespace popmatch
