/*
 * Copyright (C) 2026 The bassnet authors
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
#include "bassnet/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <algorithm>
#include <string>
#include <vector>

#include <omp.h>

namespace bassnet
{

namespace
{

std::atomic<std::size_t> g_budget{0};

} // namespace

std::size_t worker_budget()
{
    if (const std::size_t b = g_budget.load(); b > 0) {
        return b;
    }
    if (const char* env = std::getenv(kThreadsEnv)) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        }
        catch (const std::exception&) {
        }
    }
    return static_cast<std::size_t>(omp_get_max_threads());
}

void set_worker_budget(std::size_t workers)
{
    g_budget.store(workers);
    omp_set_num_threads(static_cast<int>(worker_budget()));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    if (n == 0) {
        return;
    }
    const int threads = static_cast<int>(std::min<std::size_t>(worker_budget(), n));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<bool> failed{false};
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) {
        if (failed.load(std::memory_order_relaxed)) {
            continue;
        }
        try {
            body(static_cast<std::size_t>(i));
        }
        catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
            failed.store(true);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace bassnet
