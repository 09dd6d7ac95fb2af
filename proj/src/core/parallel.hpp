#pragma once

#include <cstddef>
#include <functional>

namespace fdd {

/// Worker cap from the FDD_THREADS environment variable (0 or unset = all
/// hardware threads).  Read once per process.
unsigned thread_limit();

/// Runs fn(i) for i in [begin, end) on up to thread_limit() workers in fixed
/// contiguous chunks.  Each index is processed exactly once and writes only
/// its own slot, so results are identical for any worker count.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn);

} // namespace fdd
