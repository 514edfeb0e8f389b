#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fdual {

/// Worker count used when a caller passes 0.
inline unsigned default_threads() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

/**
 * Runs body(i) for i in [0, count) on up to `threads` workers pulling indices from a
 * shared counter. Results must be written to per-index slots so the outcome does not
 * depend on scheduling. The first exception thrown by a worker is rethrown.
 */
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
    if (threads == 0) threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace fdual
