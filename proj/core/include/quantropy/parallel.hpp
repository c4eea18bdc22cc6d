#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace quantropy {

/// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads.
/// Work is split in contiguous blocks; callers own any output slots, so
/// assembly order is independent of completion order.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
    if (n == 0) return;
    std::size_t workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * block;
        const std::size_t hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace quantropy
