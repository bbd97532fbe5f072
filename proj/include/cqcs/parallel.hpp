// Copyright 2026 The CQCS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cqcs {

/// Resolves a worker count of 0 to the hardware concurrency.
inline size_t resolve_workers(size_t requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `workers` threads. Indices are
/// claimed dynamically, so body must only write to per-index state. The first
/// exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_for(size_t count, size_t workers, Body &&body) {
    workers = std::min(resolve_workers(workers), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = count;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (size_t w = 1; w < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace cqcs
