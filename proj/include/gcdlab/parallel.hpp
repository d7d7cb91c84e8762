#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace gcdlab {

// Static partition of [0, n) across workers.  Each index is processed exactly
// once and writes only its own slot, so results never depend on the worker
// count.
template <typename Body>
void parallel_for(std::uint64_t n, int threads, Body&& body) {
    if (threads <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::uint64_t chunk = (n + threads - 1) / (std::uint64_t)threads;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t lo = (std::uint64_t)t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace gcdlab
