#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace csl {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written by index, so output order never depends on scheduling. If several
/// calls throw, the exception from the lowest index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    std::exception_ptr error;
    std::size_t error_index = n;
    std::mutex error_mutex;
    auto record = [&](std::size_t i) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
            error_index = i;
            error = std::current_exception();
        }
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                record(i);
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        record(i);
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace csl
