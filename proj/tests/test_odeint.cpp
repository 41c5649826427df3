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
#include "bassnet/model.hpp"
#include "bassnet/odeint.hpp"

#include <doctest.h>

#include <cmath>

using namespace bassnet;

TEST_SUITE("odeint")
{
    TEST_CASE("exponential decay at every grid point")
    {
        const auto grid = uniform_grid(10.0, 201);
        VectorField rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -0.7 * y[0]; };
        const std::vector<double> y0{1.0};
        const StateHistory h = integrate(rhs, y0, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::abs(h.states[i][0] - std::exp(-0.7 * grid[i])));
        }
        CHECK(worst < 1e-10);
        CHECK(h.stats.accepted > 0);
        CHECK(h.stats.accepted < grid.size()); // dense output, not one step per point
    }

    TEST_CASE("harmonic oscillator dense output")
    {
        const auto grid = uniform_grid(20.0, 1001);
        VectorField rhs = [](double, std::span<const double> y, std::span<double> dy) {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        const std::vector<double> y0{0.0, 1.0};
        double worst = 0.0;
        integrate(rhs, y0, grid, IntegratorConfig{}, [&](std::size_t, double t, std::span<const double> y) {
            worst = std::max(worst, std::abs(y[0] - std::sin(t)) + std::abs(y[1] - std::cos(t)));
        });
        CHECK(worst < 1e-8);
    }

    TEST_CASE("time-dependent right side")
    {
        // y' = cos t, y(0) = 0
        const auto grid = uniform_grid(6.0, 61);
        VectorField rhs = [](double t, std::span<const double>, std::span<double> dy) { dy[0] = std::cos(t); };
        const std::vector<double> y0{0.0};
        const StateHistory h = integrate(rhs, y0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(h.states[i][0] == doctest::Approx(std::sin(grid[i])).epsilon(1e-8));
        }
    }

    TEST_CASE("tolerance controls accuracy")
    {
        const auto grid = uniform_grid(5.0, 11);
        VectorField rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * (1 - y[0]); };
        const std::vector<double> y0{0.1};
        auto exact = [](double t) { return 1.0 / (1.0 + 9.0 * std::exp(-t)); };
        IntegratorConfig loose;
        loose.rel_tol = 1e-5;
        loose.abs_tol = 1e-8;
        const auto a = integrate(rhs, y0, grid, loose);
        const auto b = integrate(rhs, y0, grid);
        CHECK(std::abs(a.states.back()[0] - exact(5.0)) < 1e-4);
        CHECK(std::abs(b.states.back()[0] - exact(5.0)) < 1e-10);
        CHECK(b.stats.accepted > a.stats.accepted);
    }

    TEST_CASE("failures")
    {
        const auto grid = uniform_grid(1.0, 3);
        VectorField bad = [](double, std::span<const double>, std::span<double> dy) { dy[0] = NAN; };
        const std::vector<double> y0{1.0};
        CHECK_THROWS_AS(integrate(bad, y0, grid), IntegrationError);
        IntegratorConfig tiny;
        tiny.max_steps = 2;
        VectorField fast = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -1e4 * y[0]; };
        CHECK_THROWS_AS(integrate(fast, y0, grid, tiny), IntegrationError);
        IntegratorConfig neg;
        neg.rel_tol = -1.0;
        CHECK_THROWS_AS(validate(neg), std::invalid_argument);
    }

    TEST_CASE("sup differences")
    {
        const std::vector<double> a{1.0, 2.0, 3.0}, b{1.5, 1.0, 3.0};
        CHECK(sup_diff(a, b) == 1.0);
        CHECK(signed_sup_diff(a, b) == 1.0);
        CHECK(signed_sup_diff(b, a) == 0.5);
    }

    TEST_CASE("line fits")
    {
        std::vector<double> x{8, 16, 32, 64}, y;
        for (double v : x) {
            y.push_back(3.0 * std::pow(v, -1.0));
        }
        const FitResult ll = fit_line(x, y, FitModel::log_log);
        CHECK(ll.slope == doctest::Approx(-1.0));
        CHECK(ll.intercept == doctest::Approx(std::log(3.0)));
        CHECK(ll.rms_residual < 1e-12);
        std::vector<double> z;
        for (double v : x) {
            z.push_back(8.8 * std::exp(-1.3 * v));
        }
        const FitResult sl = fit_line(x, z, FitModel::semi_log);
        CHECK(sl.slope == doctest::Approx(-1.3));
        CHECK(std::exp(sl.intercept) == doctest::Approx(8.8));
        CHECK_THROWS(fit_line(std::vector<double>{1.0}, std::vector<double>{1.0}, FitModel::log_log));
        CHECK_THROWS(fit_line(x, std::vector<double>{1, 0, 1, 1}, FitModel::log_log));
    }

    TEST_CASE("weighted norm")
    {
        const EpsNormParams ep(0.02, 0.1);
        CHECK(ep.eps_tilde() == doctest::Approx(std::log(1.2)));
        CHECK(ep.theta(0.0) == doctest::Approx(0.1 / 0.12));
        CHECK(ep.theta(ep.eps_tilde()) == doctest::Approx(1.0));
        const std::vector<double> v{1.0, -1.0, 0.5};
        CHECK(eps_norm(v, 0.5) == doctest::Approx(std::exp(-0.5)));
        CHECK(eps_norm(v, 0.0) == doctest::Approx(1.0));
        const std::vector<std::size_t> n{3, 1, 2};
        CHECK(eps_norm(v, n, 1.0) == doctest::Approx(std::exp(-1.0)));
        const std::vector<std::vector<double>> snaps{{0.1, 0.0}, {0.0, 2.0}};
        CHECK(eps_norm_over_time(snaps, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)));
    }
}
