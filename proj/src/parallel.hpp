// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vaxsim::detail {

/// Calls fn(index, worker) for every index in [0, count) using up to
/// `workers` threads. Indices are handed out dynamically; callers write
/// results by index so the outcome does not depend on scheduling. The first
/// exception thrown by any call is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn)
{
    const auto threads = static_cast<unsigned>(std::min<std::size_t>(std::max(workers, 1u), count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i, 0u);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&](unsigned worker) {
        while (true) {
            const auto i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) {
                return;
            }
            try {
                fn(i, worker);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned w = 1; w < threads; ++w) {
        pool.emplace_back(body, w);
    }
    body(0);
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace vaxsim::detail
