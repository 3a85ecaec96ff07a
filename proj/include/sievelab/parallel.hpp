// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sievelab {

/// SIEVELAB_THREADS, if set to a positive integer.
inline std::optional<unsigned> env_thread_cap() {
    if (const char* env = std::getenv("SIEVELAB_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

/// Thread count to use: the request (or hardware concurrency when the request
/// is 0), never more than SIEVELAB_THREADS.
inline unsigned thread_cap(unsigned requested = 0) {
    unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (auto cap = env_thread_cap()) n = std::min(n, *cap);
    return n;
}

/// Calls fn(i) for every i in [0, count) over at most `threads` workers.
/// Each index is handled exactly once; callers write results into
/// per-index slots and reduce afterwards in index order.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace sievelab
