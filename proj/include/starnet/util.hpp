#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace starnet::util {

// Global worker-count for data-parallel loops. 0 restores the default
// (hardware concurrency). Thread-safe to read, set once at startup.
void set_thread_count(int threads);
int thread_count();

// Runs block(lo, hi) over a partition of [begin, end) on up to
// thread_count() workers. Blocks must not share mutable state.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t, std::int64_t)>& block);

// Locale-independent, 9 significant digits. Used for all CSV output so
// regression files diff cleanly.
std::string format_sig9(double value);

}  // namespace starnet::util
