#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace triwalsh {

inline unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Splits [0, total) into contiguous chunks, one per worker. All reductions in
// this codebase are exact sums or maxima, so results do not depend on the
// partition and thus not on the thread count.
inline void parallel_for(std::size_t total, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads == 0) threads = default_threads();
    if (threads <= 1 || total <= 1) {
        body(0, total);
        return;
    }
    if (threads > total) threads = unsigned(total);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                body(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace triwalsh
