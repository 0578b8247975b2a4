#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace finsum::parallel {

inline std::atomic<int>& thread_cap() {
    static std::atomic<int> cap{0};  // 0 = use hardware_concurrency
    return cap;
}

inline void set_max_threads(int n) { thread_cap().store(n < 0 ? 0 : n); }

inline int effective_threads() {
    int cap = thread_cap().load();
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (cap <= 0) return static_cast<int>(hw);
    return cap < static_cast<int>(hw) ? cap : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). Results must be written to disjoint slots by
/// index so the outcome is identical for any thread count.
inline void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int workers = effective_threads();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace finsum::parallel
