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

#include <doctest.h>

#include <omp.h>

#include <cstring>
#include <random>

using namespace bassnet;

namespace
{

std::vector<double> noise(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = U(rng);
    }
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct ThreadGuard {
    int saved = omp_get_max_threads();
    explicit ThreadGuard(int n) { omp_set_num_threads(n); }
    ~ThreadGuard() { omp_set_num_threads(saved); }
};

} // namespace

TEST_SUITE("kernels")
{
    TEST_CASE("composition layout")
    {
        const kernels::CompositionLayout L({2, 3, 1});
        CHECK(L.size() == 3 * 4 * 2);
        CHECK(L.stride(2) == 1);
        CHECK(L.stride(1) == 2);
        CHECK(L.stride(0) == 8);
        const std::size_t k[] = {1, 2, 1};
        const std::size_t idx = L.index(k);
        CHECK(L.decode(idx) == std::vector<std::size_t>{1, 2, 1});
        const std::size_t bad[] = {3, 0, 0};
        CHECK_THROWS(L.index(bad));
        const std::size_t huge[] = {std::size_t(1) << 40, std::size_t(1) << 40};
        CHECK(kernels::CompositionLayout::count(huge) == SIZE_MAX);
    }

    TEST_CASE("subset operator serial and parallel agree bitwise")
    {
        ThreadGuard g(4);
        const NetworkInstance net = make_circle(14, {0.02, 0.1});
        const kernels::SubsetOperator op(net);
        CHECK(op.states() == (1u << 14));
        const auto u = noise(op.states(), 1);
        std::vector<double> a(op.states()), b(op.states());
        op.apply_serial(u, a);
        op.apply(u, b);
        CHECK(bitwise_equal(a, b));
        CHECK(a[0] == 0.0);
    }

    TEST_CASE("subset operator of a single node")
    {
        const kernels::SubsetOperator op(NetworkInstance({0.3}, {}));
        std::vector<double> u{1.0, 0.5}, du(2);
        op.apply_serial(u, du);
        CHECK(du[1] == doctest::Approx(-0.15));
    }

    TEST_CASE("composition operator serial and parallel agree bitwise")
    {
        ThreadGuard g(4);
        const HeteroSpec s = reference_four_group_spec();
        const kernels::CompositionOperator op(s, group_sizes(s, 40));
        const auto u = noise(op.states(), 2);
        std::vector<double> a(op.states()), b(op.states());
        op.apply_serial(u, a);
        op.apply(u, b);
        CHECK(bitwise_equal(a, b));
        CHECK(a[0] == 0.0); // empty composition is frozen
    }

    TEST_CASE("composition operator row against a direct formula")
    {
        const HeteroSpec s({0.5, 0.5}, {0.01, 0.03}, {{0.2, 0.1}, {0.4, 0.3}});
        const GroupSizes gs = group_sizes(s, 6);
        const kernels::CompositionOperator op(s, gs);
        const auto u = noise(op.states(), 3);
        std::vector<double> du(op.states());
        op.apply_serial(u, du);
        const std::size_t k[] = {1, 2};
        const std::size_t idx = op.layout().index(k);
        // decay = k.p + sum_m (M_m - k_m)/(M - 1) (Qk)_m
        const double Qk0 = 0.2 * 1 + 0.1 * 2, Qk1 = 0.4 * 1 + 0.3 * 2;
        const double w0 = (3.0 - 1) / 5, w1 = (3.0 - 2) / 5;
        const double decay = 0.01 + 2 * 0.03 + w0 * Qk0 + w1 * Qk1;
        const std::size_t k0[] = {2, 2}, k1[] = {1, 3};
        const double expect = -decay * u[idx] + w0 * Qk0 * u[op.layout().index(k0)] + w1 * Qk1 * u[op.layout().index(k1)];
        CHECK(du[idx] == doctest::Approx(expect).epsilon(1e-14));
    }

    TEST_CASE("limit operator boundary terms")
    {
        const HeteroSpec s({0.5, 0.5}, {0.01, 0.03}, {{0.2, 0.1}, {0.4, 0.3}});
        const kernels::CompositionOperator op(s, 3);
        for (const auto& b : op.boundary()) {
            CHECK(op.total(b.row) == 3);
            CHECK(b.coeff > 0.0);
        }
        std::size_t active = 0;
        for (std::size_t i = 0; i < op.states(); ++i) {
            active += op.active(i) ? 1 : 0;
        }
        CHECK(active == 9); // n(k) in 1..3 for K = 2
    }
}
