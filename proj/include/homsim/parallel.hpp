#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace homsim {

// Runs fn(i) for i in [0, n) across up to `workers` threads. Each index is
// computed independently and must write only to its own slot, so the result
// is identical to the serial loop. The first worker exception is rethrown.
template <typename Fn>
void parallel_for_index(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nw = std::min(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::mutex err_mutex;
    std::exception_ptr err;
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += nw) fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace homsim
