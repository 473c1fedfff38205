#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace dyadic {

/// Runs fn(i) for i in [0, n) on up to `threads` threads in contiguous
/// blocks. Each index is handled by exactly one call, so per-index outputs are
/// independent of the thread count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    const std::size_t t = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (t == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(t);
    const std::size_t block = (n + t - 1) / t;
    for (std::size_t b = 0; b < t; ++b) {
        const std::size_t lo = b * block;
        const std::size_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

}  // namespace dyadic
