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

#include <cmath>
#include <stdexcept>
#include <string>

namespace bassnet
{

namespace
{

constexpr double kBoundTolerance = 1e-9;

HeteroTrajectory solve_groups(std::vector<double> cap, std::vector<double> p, std::vector<double> Q, std::size_t K,
                              std::span<const double> grid, const IntegratorConfig& cfg)
{
    VectorField rhs = [&](double, std::span<const double> f, std::span<double> df) {
        for (std::size_t k = 0; k < K; ++k) {
            double infl = p[k];
            for (std::size_t m = 0; m < K; ++m) {
                infl += Q[m * K + k] * f[m];
            }
            df[k] = (cap[k] - f[k]) * infl;
        }
    };
    std::vector<double> y0(K, 0.0);
    HeteroTrajectory out;
    out.t.assign(grid.begin(), grid.end());
    out.f.assign(K, std::vector<double>(grid.size()));
    out.f_het.assign(grid.size(), 0.0);
    integrate(rhs, y0, grid, cfg, [&](std::size_t i, double t, std::span<const double> f) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            if (f[k] > cap[k] + kBoundTolerance || f[k] < -kBoundTolerance) {
                throw IntegrationError("hetero solve: f_" + std::to_string(k + 1) + " left [0, a_k] at t = " +
                                       std::to_string(t));
            }
            out.f[k][i] = f[k];
            s += f[k];
        }
        out.f_het[i] = s;
    });
    return out;
}

} // namespace

double bass_formula(double t, const BassParams& params)
{
    validate(params, true);
    const double e = std::exp(-(params.p + params.q) * t);
    return (1.0 - e) / (1.0 + (params.q / params.p) * e);
}

double circle_limit(double t, const BassParams& params)
{
    validate(params, true);
    const double p = params.p, q = params.q;
    return -std::expm1(-(p + q) * t - q * std::expm1(-p * t) / p);
}

std::vector<double> bass_formula(std::span<const double> t, const BassParams& params)
{
    std::vector<double> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        out[i] = bass_formula(t[i], params);
    }
    return out;
}

std::vector<double> circle_limit(std::span<const double> t, const BassParams& params)
{
    std::vector<double> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        out[i] = circle_limit(t[i], params);
    }
    return out;
}

Trajectory HeteroTrajectory::to_trajectory() const
{
    Trajectory tr(t);
    for (std::size_t k = 0; k < f.size(); ++k) {
        tr.add("f_" + std::to_string(k + 1), f[k]);
    }
    tr.add("f_het", f_het);
    return tr;
}

HeteroTrajectory solve_hetero(const HeteroSpec& spec, std::span<const double> grid, const IntegratorConfig& cfg)
{
    validate(spec);
    return solve_groups(spec.a, spec.p, spec.Q_flat, spec.K(), grid, cfg);
}

HeteroTrajectory solve_hetero_finiteM(const HeteroSpec& spec, const GroupSizes& sizes, std::span<const double> grid,
                                      const IntegratorConfig& cfg)
{
    validate(spec);
    if (sizes.M_k.size() != spec.K() || sizes.M == 0) {
        throw std::invalid_argument("solve_hetero_finiteM: group sizes do not match the spec");
    }
    std::size_t total = 0;
    std::vector<double> cap(spec.K());
    for (std::size_t k = 0; k < spec.K(); ++k) {
        total += sizes.M_k[k];
        cap[k] = static_cast<double>(sizes.M_k[k]) / static_cast<double>(sizes.M);
    }
    if (total != sizes.M) {
        throw std::invalid_argument("solve_hetero_finiteM: group sizes do not sum to M");
    }
    return solve_groups(std::move(cap), spec.p, spec.Q_flat, spec.K(), grid, cfg);
}

HeteroSpec mild_spec(std::span<const double> p, std::span<const double> q, std::span<const double> a)
{
    if (p.size() != q.size() || p.size() != a.size()) {
        throw std::invalid_argument("mild heterogeneity: p, q and a must have equal length");
    }
    const std::size_t K = a.size();
    HeteroSpec spec;
    spec.a.assign(a.begin(), a.end());
    spec.p.assign(p.begin(), p.end());
    spec.Q_flat.resize(K * K);
    for (std::size_t m = 0; m < K; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            spec.Q(m, k) = q[k];
        }
    }
    validate(spec);
    return spec;
}

HeteroTrajectory solve_mild_hetero(std::span<const double> p, std::span<const double> q, std::span<const double> a,
                                   std::span<const double> grid, const IntegratorConfig& cfg)
{
    return solve_hetero(mild_spec(p, q, a), grid, cfg);
}

HeteroSpec two_group_hub_spec(const BassParams& params)
{
    return HeteroSpec({0.5, 0.5}, {0.0, 2.0 * params.p}, {{0.0, 0.0}, {4.0 * params.q, 0.0}});
}

InitialDerivatives second_derivatives_at_zero(InitialSystem system, const BassParams& params)
{
    validate(params, true);
    const double h = 1e-3 / (params.p + params.q);
    const std::vector<double> grid{0.0, h, 2 * h, 3 * h, 4 * h};
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-20;
    std::vector<double> f(5);
    if (system == InitialSystem::homogeneous) {
        const double p = params.p, q = params.q;
        VectorField rhs = [&](double, std::span<const double> y, std::span<double> dy) {
            dy[0] = (1.0 - y[0]) * (p + q * y[0]);
        };
        const std::vector<double> y0{0.0};
        integrate(rhs, y0, grid, cfg, [&](std::size_t i, double, std::span<const double> y) { f[i] = y[0]; });
    }
    else {
        const HeteroTrajectory tr = solve_hetero(two_group_hub_spec(params), grid, cfg);
        f = tr.f_het;
    }
    InitialDerivatives d;
    d.first = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d.second = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) / (12.0 * h * h);
    return d;
}

} // namespace bassnet
