#pragma once

#include <cstddef>
#include <functional>

namespace pseudostar {

/// Worker count: the THREADS environment variable when set to a positive
/// integer, otherwise std::thread::hardware_concurrency().
unsigned worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, count). Chunks write
/// disjoint outputs so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 64);

}  // namespace pseudostar
