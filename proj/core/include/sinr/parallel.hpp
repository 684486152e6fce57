#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace sinr {

// Chunked parallel loop over [0, n); results must be written to
// preallocated per-index slots so the outcome is independent of the
// thread count.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const size_t nt = std::min<size_t>(static_cast<size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (size_t i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace sinr
