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
#include "bassnet/master_eq.hpp"
#include "bassnet/parallel.hpp"
#include "bassnet/stochastic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

using namespace bassnet;

TEST_SUITE("stochastic")
{
    TEST_CASE("single node adoption law")
    {
        // Kolmogorov-Smirnov against 1 - e^{-pt}; 99% critical value 1.628 / sqrt(n)
        const double p = 0.3;
        const NetworkInstance net({p}, {});
        const std::size_t n = 100000;
        std::vector<double> times;
        times.reserve(n);
        for (std::size_t r = 0; r < n; ++r) {
            const auto rec = simulate_once(net, replicate_seed(11, r), 1e6);
            times.push_back(rec.times[0]);
        }
        std::sort(times.begin(), times.end());
        double D = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double F = 1.0 - std::exp(-p * times[i]);
            D = std::max({D, std::abs(F - double(i) / n), std::abs(F - double(i + 1) / n)});
        }
        CHECK(D < 1.628 / std::sqrt(double(n)));
    }

    TEST_CASE("no external rate means no adoption")
    {
        const NetworkInstance net = make_complete(6, {0.0, 0.5});
        const auto rec = simulate_once(net, 3, 100.0);
        CHECK(rec.adopters_at(100.0) == 0);
        for (double t : rec.times) {
            CHECK(std::isinf(t));
        }
    }

    TEST_CASE("adoption records")
    {
        const NetworkInstance net = make_circle(10, {0.05, 0.2});
        const auto rec = simulate_once(net, 99, 30.0);
        CHECK(rec.T == 30.0);
        CHECK(rec.seed == 99);
        for (double t : rec.times) {
            CHECK((std::isinf(t) || (t >= 0.0 && t <= 30.0)));
        }
        CHECK(rec.adopters_at(0.0) == 0);
        CHECK_THROWS_AS(simulate_once(net, 1, 0.0), std::invalid_argument);
    }

    TEST_CASE("seed derivation is fixed")
    {
        CHECK(replicate_seed(0, 0) == 0xE220A8397B1DCDAFULL);
        CHECK(replicate_seed(42, 7) != replicate_seed(42, 8));
        CHECK(replicate_seed(42, 7) != replicate_seed(43, 7));
    }

    TEST_CASE("determinism and serial agreement")
    {
        set_worker_budget(4);
        const NetworkInstance net = make_complete(8, {0.02, 0.1});
        const auto grid = uniform_grid(50.0, 26);
        const McSummary a = monte_carlo(net, 3001, grid, 42);
        const McSummary b = monte_carlo(net, 3001, grid, 42);
        const McSummary c = monte_carlo_serial(net, 3001, grid, 42);
        set_worker_budget(0);
        CHECK(std::memcmp(a.f_mean.data(), b.f_mean.data(), grid.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(a.f_mean.data(), c.f_mean.data(), grid.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(a.f_se.data(), c.f_se.data(), grid.size() * sizeof(double)) == 0);
        CHECK(a.R == 3001);
        CHECK(a.master_seed == 42);
        const McSummary d = monte_carlo(net, 3001, grid, 43);
        CHECK(d.f_mean != a.f_mean);
    }

    TEST_CASE("one replicate is a step function")
    {
        const NetworkInstance net = make_complete(5, {0.1, 0.3});
        const auto grid = uniform_grid(40.0, 81);
        const McSummary mc = monte_carlo(net, 1, grid, 5);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(mc.f_se[i] == 0.0);
            const double N = mc.f_mean[i] * 5.0;
            CHECK(N == doctest::Approx(std::round(N)));
            if (i > 0) {
                CHECK(mc.f_mean[i] >= mc.f_mean[i - 1]);
            }
        }
        CHECK_THROWS_AS(monte_carlo(net, 0, grid, 5), std::invalid_argument);
    }

    TEST_CASE("two-node complete network: nobody adopted")
    {
        const double p = 0.05, q = 0.2;
        const NetworkInstance net = make_complete(2, {p, q});
        const std::size_t R = 100000;
        const double t = 5.0;
        std::size_t none = 0;
        for (std::size_t r = 0; r < R; ++r) {
            none += simulate_once(net, replicate_seed(8, r), t).adopters_at(t) == 0 ? 1 : 0;
        }
        const double P = std::exp(-2 * p * t);
        const double se = std::sqrt(P * (1 - P) / R);
        CHECK(std::abs(double(none) / R - P) < 4 * se);
    }

    TEST_CASE("complete network mean against the reduced system")
    {
        const BassParams bp{0.02, 0.1};
        const NetworkInstance net = make_complete(8, bp);
        const auto grid = uniform_grid(80.0, 41);
        const McSummary mc = monte_carlo(net, 100000, grid, 2024);
        const auto red = solve_complete_reduced(8, bp, grid);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(std::abs(mc.f_mean[i] - red.f_discrete[i]) <= 4 * mc.f_se[i]);
        }
    }

    TEST_CASE("circle and kgroup means against the master equations")
    {
        const auto grid = uniform_grid(60.0, 31);
        const NetworkInstance circ = make_circle(7, {0.03, 0.2});
        const McSummary mc = monte_carlo(circ, 50000, grid, 3);
        const auto red = solve_circle_reduced(7, {0.03, 0.2}, grid);
        const HeteroSpec s = reference_four_group_spec();
        const auto [kn, sizes] = make_kgroup(s, 20);
        const McSummary mk = monte_carlo(kn, 50000, grid, 4);
        const auto kg = solve_kgroup_reduced(s, sizes, grid);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(std::abs(mc.f_mean[i] - red.f_discrete[i]) <= 4 * mc.f_se[i]);
            CHECK(std::abs(mk.f_mean[i] - kg.f_discrete[i]) <= 4 * mk.f_se[i]);
        }
    }

    TEST_CASE("exchangeable nodes adopt equally often")
    {
        const NetworkInstance net = make_complete(6, {0.02, 0.1});
        const std::size_t R = 50000;
        const double t = 15.0;
        std::vector<std::size_t> hits(6, 0);
        for (std::size_t r = 0; r < R; ++r) {
            const auto rec = simulate_once(net, replicate_seed(77, r), t);
            for (std::size_t j = 0; j < 6; ++j) {
                hits[j] += rec.times[j] <= t ? 1 : 0;
            }
        }
        double mean = 0.0;
        for (auto h : hits) {
            mean += double(h) / R;
        }
        mean /= 6.0;
        const double se = std::sqrt(mean * (1 - mean) / R);
        for (auto h : hits) {
            CHECK(std::abs(double(h) / R - mean) < 5 * se);
        }
    }
}
