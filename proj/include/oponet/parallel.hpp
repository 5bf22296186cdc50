#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace oponet {

// Worker cap: explicit argument > OPONET_THREADS > hardware concurrency.
inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("OPONET_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

// Runs fn(0..count-1) across at most `threads` workers. Each index must be
// independent; results must be written to per-index slots so the outcome
// does not depend on scheduling. The first exception is rethrown.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(resolve_thread_count(threads), count);
    if (count <= 0) return;
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += threads) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& worker : pool) worker.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace oponet
