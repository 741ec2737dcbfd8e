// parallel.hpp — index-space parallel loop over pure evaluations.  Results are
// stored by index, so the outcome never depends on scheduling; the
// ANTICROSS_THREADS environment variable caps the worker count (speed only).

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace anticross {

inline unsigned worker_count(std::size_t n, unsigned requested = 0) {
    unsigned workers = requested;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("ANTICROSS_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
        }
    }
    return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
}

// body(i) for i in [0, n), partitioned into contiguous index blocks
template <typename Body>
void parallel_for(std::size_t n, const Body& body, unsigned requested_threads = 0) {
    const unsigned workers = worker_count(n, requested_threads);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace anticross
