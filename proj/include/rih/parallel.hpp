#pragma once

#include <cstdint>
#include <functional>

namespace rih {

/// Worker count: RIH_THREADS when set and positive, else hardware concurrency.
int thread_count();
/// Override for the current process (0 restores the default).
void set_thread_count(int n);

/// Runs fn(begin, end) over [0, total) split into contiguous chunks, one per worker.
void parallel_ranges(std::int64_t total, const std::function<void(std::int64_t, std::int64_t)>& fn,
                     std::int64_t min_chunk = 4096);

}  // namespace rih
