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
#include "bassnet/master_kernels.hpp"
#include "bassnet/model.hpp"
#include "bassnet/stochastic.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace
{

using namespace bassnet;

std::vector<double> ramp(std::size_t n)
{
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = 1.0 / (1.0 + static_cast<double>(i % 97));
    }
    return u;
}

template <bool Serial>
void BM_composition(benchmark::State& state)
{
    const HeteroSpec spec = reference_four_group_spec();
    const kernels::CompositionOperator op(spec, group_sizes(spec, static_cast<std::size_t>(state.range(0))));
    const auto u = ramp(op.states());
    std::vector<double> du(op.states());
    for (auto _ : state) {
        if constexpr (Serial) {
            op.apply_serial(u, du);
        }
        else {
            op.apply(u, du);
        }
        benchmark::DoNotOptimize(du.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(op.states()));
}

template <bool Serial>
void BM_subset(benchmark::State& state)
{
    const NetworkInstance net = make_circle(static_cast<std::size_t>(state.range(0)), {0.02, 0.1});
    const kernels::SubsetOperator op(net);
    const auto u = ramp(op.states());
    std::vector<double> du(op.states());
    for (auto _ : state) {
        if constexpr (Serial) {
            op.apply_serial(u, du);
        }
        else {
            op.apply(u, du);
        }
        benchmark::DoNotOptimize(du.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(op.states()));
}

template <bool Serial>
void BM_monte_carlo(benchmark::State& state)
{
    const NetworkInstance net = make_complete(40, {0.02, 0.1});
    const auto grid = uniform_grid(100.0, 101);
    const auto R = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto mc = Serial ? monte_carlo_serial(net, R, grid, 7) : monte_carlo(net, R, grid, 7);
        benchmark::DoNotOptimize(mc.f_mean.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(R));
}

} // namespace

BENCHMARK(BM_composition<true>)->Name("composition/serial")->Arg(40)->Arg(80)->Arg(160);
BENCHMARK(BM_composition<false>)->Name("composition/omp")->Arg(40)->Arg(80)->Arg(160);
BENCHMARK(BM_subset<true>)->Name("subset/serial")->Arg(10)->Arg(14);
BENCHMARK(BM_subset<false>)->Name("subset/omp")->Arg(10)->Arg(14);
BENCHMARK(BM_monte_carlo<true>)->Name("monte_carlo/serial")->Arg(10000);
BENCHMARK(BM_monte_carlo<false>)->Name("monte_carlo/omp")->Arg(10000);

BENCHMARK_MAIN();
