#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qsc {

/// Runs fn(0..count-1) on up to `threads` workers (0 = hardware default).
/// Work is strided by index; callers write results into per-index slots so
/// the outcome is identical for every parallelism degree.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
    unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(n_workers, count > 0 ? static_cast<unsigned>(count) : 1u);
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += n_workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qsc
