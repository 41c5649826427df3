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
#include "bassnet/compartmental.hpp"

#include <doctest.h>

#include <cmath>

using namespace bassnet;


TEST_SUITE("compartmental")
{
    TEST_CASE("closed forms")
    {
        CHECK(bass_formula(10.0, {0.02, 0.1}) == doctest::Approx(0.2788562882327193).epsilon(1e-14));
        CHECK(circle_limit(10.0, {0.02, 0.11}) == doctest::Approx(0.2614150417055904).epsilon(1e-14));
        CHECK(bass_formula(0.0, {0.02, 0.1}) == 0.0);
        CHECK(circle_limit(0.0, {0.02, 0.1}) == 0.0);
        // q = 0: both reduce to 1 - e^{-pt}
        CHECK(bass_formula(7.0, {0.05, 0.0}) == doctest::Approx(1.0 - std::exp(-0.35)));
        CHECK(circle_limit(7.0, {0.05, 0.0}) == doctest::Approx(1.0 - std::exp(-0.35)));
        CHECK_THROWS_AS(bass_formula(1.0, {0.0, 0.1}), std::invalid_argument);
    }

    TEST_CASE("closed forms solve their differential equations")
    {
        const auto grid = uniform_grid(150.0, 301);
        const double p = 0.02, q = 0.11;
        VectorField rhs = [&](double t, std::span<const double> f, std::span<double> df) {
            df[0] = (1 - f[0]) * (p + q * f[0]);
            df[1] = (1 - f[1]) * (p + q * (1 - std::exp(-p * t)));
        };
        const std::vector<double> y0{0.0, 0.0};
        const auto h = integrate(rhs, y0, grid);
        const auto fb = bass_formula(grid, {p, q});
        const auto fc = circle_limit(grid, {p, q});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(h.states[i][0] - fb[i]) < 1e-9);
            CHECK(std::abs(h.states[i][1] - fc[i]) < 1e-9);
        }
    }

    TEST_CASE("single group reproduces the homogeneous model")
    {
        const auto grid = uniform_grid(80.0, 81);
        const HeteroSpec s({1.0}, {0.03}, {{0.4}});
        const auto tr = solve_hetero(s, grid);
        const auto fb = bass_formula(grid, {0.03, 0.4});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(tr.f_het[i] - fb[i]) < 1e-9);
        }
        CHECK(tr.to_trajectory().has("f_1"));
    }

    TEST_CASE("identical groups collapse")
    {
        const auto grid = uniform_grid(60.0, 61);
        const double p[] = {0.05, 0.05, 0.05}, q[] = {0.3, 0.3, 0.3}, a[] = {0.2, 0.5, 0.3};
        const auto tr = solve_mild_hetero(p, q, a, grid);
        const auto fb = bass_formula(grid, {0.05, 0.3});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(tr.f_het[i] - fb[i]) < 1e-9);
            CHECK(tr.f[1][i] / 0.5 == doctest::Approx(tr.f[0][i] / 0.2));
        }
    }

    TEST_CASE("group fractions stay below their caps")
    {
        const HeteroSpec s = reference_four_group_spec();
        const auto grid = uniform_grid(400.0, 101);
        const auto tr = solve_hetero(s, grid);
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(tr.f[k].back() <= s.a[k] + 1e-12);
            CHECK(tr.f[k].back() > 0.99 * s.a[k]);
        }
        const auto fin = solve_hetero_finiteM(s, group_sizes(s, 13), grid);
        CHECK(fin.f_het.back() == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(fin.f[1].back() <= 1.0 / 13.0 + 1e-12);
    }

    TEST_CASE("hub example derivatives at zero")
    {
        const BassParams bp{0.02, 0.1};
        const auto hom = second_derivatives_at_zero(InitialSystem::homogeneous, bp);
        const auto het = second_derivatives_at_zero(InitialSystem::two_group_hub, bp);
        CHECK(hom.first == doctest::Approx(0.02).epsilon(1e-6));
        CHECK(het.first == doctest::Approx(0.02).epsilon(1e-6));
        CHECK(hom.second == doctest::Approx(0.02 * 0.08).epsilon(1e-3));
        CHECK(het.second == doctest::Approx(2 * 0.02 * 0.08).epsilon(1e-3));
        const HeteroSpec s = two_group_hub_spec(bp);
        const BassParams h = homogenize(s);
        CHECK(h.p == doctest::Approx(0.02));
        CHECK(h.q == doctest::Approx(0.1));
    }
}
