#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace siegel {

// Runs body(i) for i in [0, count) on up to `jobs` threads. jobs <= 1 runs
// inline. The first exception thrown by any worker is rethrown here.
template <class Body>
void parallel_for(std::size_t count, int jobs, Body&& body)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex m;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(m);
                if (!first)
                    first = std::current_exception();
                next = count;
                return;
            }
        }
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (first)
        std::rethrow_exception(first);
}

} // namespace siegel
