#include "chaincal/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace chaincal {

int worker_count(int requested) {
    int n = requested;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    if (const char* cap = std::getenv("CHAINCAL_THREADS")) {
        try {
            const int limit = std::stoi(cap);
            if (limit >= 1) n = std::min(n, limit);
        } catch (...) {
            // unparsable cap is ignored
        }
    }
    return std::max(1, n);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t n, int workers) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    if (n == 0) return ranges;
    const std::uint64_t w = std::max(1, workers);
    const std::uint64_t chunk = n / w;
    const std::uint64_t rem = n % w;
    std::uint64_t begin = 0;
    for (std::uint64_t i = 0; i < w && begin < n; ++i) {
        std::uint64_t size = chunk + (i < rem ? 1 : 0);
        ranges.emplace_back(begin, begin + size);
        begin += size;
    }
    return ranges;
}

}  // namespace chaincal
