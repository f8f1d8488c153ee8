/*
 * Copyright 2026 The Tornado Tabulation Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Runs independent trials on a small worker pool. Results are combined by
// trial index, so output never depends on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tornado {

/// hardware_concurrency, capped by TORNADO_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TORNADO_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Calls fn(t) for every t in [0, trials); fn must be thread-safe.
template <class Fn>
void for_each_trial(std::uint64_t trials, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(trials, 1)));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    constexpr std::uint64_t kChunk = 256;
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        try {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= trials) return;
                const std::uint64_t end = std::min(trials, begin + kChunk);
                for (std::uint64_t t = begin; t < end; ++t) fn(t);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(trials);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// Sum of count(t) over all trials.
template <class Fn>
std::uint64_t count_trials(std::uint64_t trials, Fn&& count) {
    std::atomic<std::uint64_t> total{0};
    for_each_trial(trials, [&](std::uint64_t t) {
        const std::uint64_t c = count(t);
        if (c) total.fetch_add(c, std::memory_order_relaxed);
    });
    return total.load();
}

}  // namespace tornado
