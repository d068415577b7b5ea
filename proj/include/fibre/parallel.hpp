#pragma once

#include <cstdint>
#include <functional>

namespace fibre {

/// Worker count: `requested` if non-zero, else FIBRETOOL_THREADS, else the
/// hardware concurrency.
unsigned worker_count(unsigned requested = 0);

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// fn(begin, end) on each. Chunk boundaries depend only on n and workers.
void parallel_chunks(std::int64_t n, unsigned workers,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

} // namespace fibre
