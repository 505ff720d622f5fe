#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cxhyp {

// Worker count for data-parallel loops: CXHYP_THREADS when set (clamped to
// [1, 64]), otherwise the hardware concurrency.
inline int worker_count() {
    static const int cached = [] {
        int n = 0;
        if (const char* env = std::getenv("CXHYP_THREADS")) n = std::atoi(env);
        if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
        return std::clamp(n, 1, 64);
    }();
    return cached;
}

// Runs fn(i) for i in [0, n). Results must be written to positional slots so
// the output is identical for every worker count; the loop only distributes
// work, it never reorders arithmetic within a slot.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    if (n <= 0) return;
    long w = std::min<long>(worker_count(), n);
    if (w <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(w));
    for (long t = 0; t < w; ++t) {
        long begin = n * t / w, end = n * (t + 1) / w;
        pool.emplace_back([&, begin, end] {
            try {
                for (long i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cxhyp
