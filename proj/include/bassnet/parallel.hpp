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
#ifndef BASSNET_PARALLEL_HPP
#define BASSNET_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace bassnet
{

/// Environment variable that overrides the default worker budget.
inline constexpr const char* kThreadsEnv = "BASSNET_THREADS";

/**
 * Number of workers used by sweeps and Monte Carlo replicates. Resolution order:
 * set_worker_budget, then BASSNET_THREADS, then the OpenMP default.
 */
std::size_t worker_budget();

/// 0 restores the default resolution. Also sets the OpenMP thread count used by the kernels.
void set_worker_budget(std::size_t workers);

/**
 * Runs body(i) for i in [0, n) on up to worker_budget() threads. If any call throws,
 * the exception of the smallest failing index is rethrown after all work stops.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace bassnet

#endif // BASSNET_PARALLEL_HPP
