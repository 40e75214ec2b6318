#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gtdyn {

/// Worker count for suite runs: ACL_THREADS caps it, default is the
/// hardware concurrency.
inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    int budget = hw ? static_cast<int>(hw) : 1;
    if (const char* env = std::getenv("ACL_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) budget = v;
    }
    return budget;
}

/// Runs f(i) for i in [0, count) across the thread budget. Results must be
/// written into per-index slots by the caller; the reduction order is then
/// deterministic regardless of schedule.
template <class F>
void parallel_for(int count, F f) {
    int workers = std::min(thread_budget(), count > 0 ? count : 1);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace gtdyn
