#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace chaincal {

/// Resolves the worker count for parallel sections. `requested == 0` means
/// auto (hardware concurrency). The CHAINCAL_THREADS environment variable,
/// when set, caps the result.
int worker_count(int requested = 0);

/// Splits [0, n) into at most `workers` contiguous, near-equal ranges.
std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t n, int workers);

}  // namespace chaincal
