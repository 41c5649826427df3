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

#include "bassnet/compartmental.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bassnet
{

SubsetKey subset_key(std::span<const std::size_t> nodes)
{
    SubsetKey key = 0;
    for (std::size_t i : nodes) {
        if (i >= 32) {
            throw std::out_of_range("subset_key: node index too large");
        }
        key |= SubsetKey{1} << i;
    }
    return key;
}

SubsetTable::SubsetTable(std::size_t nodes, std::vector<double> t, std::vector<std::vector<double>> values)
    : nodes_(nodes)
    , t_(std::move(t))
    , values_(std::move(values))
{
    f_discrete_.resize(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < nodes_; ++j) {
            s += values_[i][SubsetKey{1} << j];
        }
        f_discrete_[i] = 1.0 - s / static_cast<double>(nodes_);
    }
}

std::vector<double> SubsetTable::series(SubsetKey key) const
{
    std::vector<double> out(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) {
        out[i] = values_[i][key];
    }
    return out;
}

Trajectory SubsetTable::to_trajectory() const
{
    Trajectory tr(t_);
    const std::size_t n_states = std::size_t{1} << nodes_;
    for (std::size_t key = 1; key < n_states; ++key) {
        std::string name = "S";
        for (std::size_t j = 0; j < nodes_; ++j) {
            if (key & (std::size_t{1} << j)) {
                name += "_" + std::to_string(j + 1);
            }
        }
        tr.add(std::move(name), series(static_cast<SubsetKey>(key)));
    }
    tr.add("f_discrete", f_discrete_);
    return tr;
}

SubsetTable solve_full_master(const NetworkInstance& net, std::span<const double> grid, const IntegratorConfig& cfg)
{
    if (net.size() > kMaxFullMasterNodes) {
        throw std::invalid_argument("solve_full_master: M = " + std::to_string(net.size()) + " exceeds " +
                                    std::to_string(kMaxFullMasterNodes));
    }
    const kernels::SubsetOperator op(net);
    VectorField rhs = [&](double, std::span<const double> u, std::span<double> du) { op.apply(u, du); };
    std::vector<double> y0(op.states(), 1.0);
    std::vector<std::vector<double>> values(grid.size());
    integrate(rhs, y0, grid, cfg,
              [&](std::size_t i, double, std::span<const double> u) { values[i].assign(u.begin(), u.end()); });
    return SubsetTable(net.size(), std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

std::vector<double> ReducedSolution::level(std::size_t n) const
{
    if (n < 1 || n > levels()) {
        throw std::out_of_range("ReducedSolution: level out of range");
    }
    std::vector<double> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        out[i] = S[i][n - 1];
    }
    return out;
}

Trajectory ReducedSolution::to_trajectory() const
{
    Trajectory tr(t);
    for (std::size_t n = 1; n <= levels(); ++n) {
        tr.add("S_" + std::to_string(n), level(n));
    }
    tr.add("f_discrete", f_discrete);
    return tr;
}

namespace
{

ReducedSolution run_reduced(const VectorField& rhs, std::size_t levels, std::span<const double> grid,
                            const IntegratorConfig& cfg)
{
    ReducedSolution sol;
    sol.t.assign(grid.begin(), grid.end());
    sol.S.resize(grid.size());
    sol.f_discrete.resize(grid.size());
    std::vector<double> y0(levels, 1.0);
    integrate(rhs, y0, grid, cfg, [&](std::size_t i, double, std::span<const double> y) {
        sol.S[i].assign(y.begin(), y.end());
        sol.f_discrete[i] = 1.0 - y[0];
    });
    return sol;
}

} // namespace

ReducedSolution solve_complete_reduced(std::size_t M, const BassParams& params, std::span<const double> grid,
                                       const IntegratorConfig& cfg)
{
    if (M < 1) {
        throw std::invalid_argument("solve_complete_reduced: M must be >= 1");
    }
    validate(params);
    std::vector<double> qn(M, 0.0);
    for (std::size_t n = 1; n < M; ++n) {
        qn[n - 1] = params.q * static_cast<double>(M - n) / static_cast<double>(M - 1);
    }
    const double p = params.p;
    VectorField rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        for (std::size_t n = 1; n < M; ++n) {
            const double nn = static_cast<double>(n);
            dy[n - 1] = -nn * (p + qn[n - 1]) * y[n - 1] + nn * qn[n - 1] * y[n];
        }
        dy[M - 1] = -static_cast<double>(M) * p * y[M - 1];
    };
    return run_reduced(rhs, M, grid, cfg);
}

ReducedSolution solve_circle_reduced(std::size_t M, const BassParams& params, std::span<const double> grid,
                                     const IntegratorConfig& cfg)
{
    if (M < 3) {
        throw std::invalid_argument("solve_circle_reduced: M must be >= 3");
    }
    validate(params);
    const double p = params.p, q = params.q;
    VectorField rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        for (std::size_t n = 1; n < M; ++n) {
            dy[n - 1] = -(static_cast<double>(n) * p + q) * y[n - 1] + q * y[n];
        }
        dy[M - 1] = -static_cast<double>(M) * p * y[M - 1];
    };
    return run_reduced(rhs, M, grid, cfg);
}

double KGroupSolution::u(std::span<const std::size_t> k, std::size_t i) const
{
    if (states.empty()) {
        throw std::logic_error("KGroupSolution: states were not kept");
    }
    return states.at(i).at(layout.index(k));
}

Trajectory KGroupSolution::to_trajectory() const
{
    Trajectory tr(t);
    if (!states.empty()) {
        for (std::size_t idx = 1; idx < layout.size(); ++idx) {
            const auto k = layout.decode(idx);
            std::string name = "u";
            for (std::size_t kj : k) {
                name += "_" + std::to_string(kj);
            }
            std::vector<double> v(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) {
                v[i] = states[i][idx];
            }
            tr.add(std::move(name), std::move(v));
        }
    }
    else {
        for (std::size_t j = 0; j < unit.size(); ++j) {
            std::string name = "u";
            for (std::size_t m = 0; m < unit.size(); ++m) {
                name += m == j ? "_1" : "_0";
            }
            tr.add(std::move(name), unit[j]);
        }
    }
    tr.add("f_discrete", f_discrete);
    return tr;
}

KGroupSolution solve_kgroup_reduced(const HeteroSpec& spec, const GroupSizes& sizes, std::span<const double> grid,
                                    const IntegratorConfig& cfg, const KGroupOptions& options)
{
    validate(spec);
    const std::size_t count = kernels::CompositionLayout::count(sizes.M_k);
    if (count > options.budget) {
        throw std::length_error("solve_kgroup_reduced: " + std::to_string(count) + " composition states exceed the budget of " +
                                std::to_string(options.budget));
    }
    const kernels::CompositionOperator op(spec, sizes);
    KGroupSolution sol;
    sol.sizes = sizes;
    sol.layout = op.layout();
    sol.t.assign(grid.begin(), grid.end());
    const std::size_t K = spec.K();
    sol.unit.assign(K, std::vector<double>(grid.size()));
    sol.f_discrete.resize(grid.size());
    if (options.keep_states) {
        sol.states.resize(grid.size());
    }
    VectorField rhs = [&](double, std::span<const double> u, std::span<double> du) { op.apply(u, du); };
    std::vector<double> y0(op.states(), 1.0);
    integrate(rhs, y0, grid, cfg, [&](std::size_t i, double, std::span<const double> u) {
        double s = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            const double v = u[sol.layout.unit_index(j)];
            sol.unit[j][i] = v;
            s += static_cast<double>(sizes.M_k[j]) * v;
        }
        sol.f_discrete[i] = 1.0 - s / static_cast<double>(sizes.M);
        if (options.keep_states) {
            sol.states[i].assign(u.begin(), u.end());
        }
    });
    return sol;
}

std::string to_string(LimitSystem system)
{
    switch (system) {
    case LimitSystem::complete:
        return "complete";
    case LimitSystem::circle:
        return "circle";
    case LimitSystem::kgroup:
        return "kgroup";
    }
    return "unknown";
}

std::vector<double> limit_ansatz(LimitSystem system, const BassParams& params, double t, std::size_t levels)
{
    std::vector<double> u(levels);
    if (system == LimitSystem::complete) {
        const double s = 1.0 - bass_formula(t, params);
        double v = 1.0;
        for (std::size_t n = 0; n < levels; ++n) {
            v *= s;
            u[n] = v;
        }
    }
    else if (system == LimitSystem::circle) {
        const double s = 1.0 - circle_limit(t, params);
        for (std::size_t n = 0; n < levels; ++n) {
            u[n] = std::exp(-static_cast<double>(n) * params.p * t) * s;
        }
    }
    else {
        throw std::invalid_argument("limit_ansatz: use solve_hetero for the K-group limit");
    }
    return u;
}

ReducedSolution solve_truncated_limit(LimitSystem system, const BassParams& params, std::size_t levels,
                                      std::span<const double> grid, const IntegratorConfig& cfg, Closure closure)
{
    if (levels < 1) {
        throw std::invalid_argument("solve_truncated_limit: truncation level must be >= 1");
    }
    validate(params, closure == Closure::analytic);
    const std::size_t N = levels;
    const double p = params.p, q = params.q;
    VectorField rhs;
    if (system == LimitSystem::complete) {
        rhs = [&, N](double t, std::span<const double> y, std::span<double> dy) {
            for (std::size_t n = 1; n < N; ++n) {
                const double nn = static_cast<double>(n);
                dy[n - 1] = -nn * (p + q) * y[n - 1] + nn * q * y[n];
            }
            double top = 0.0;
            if (closure == Closure::analytic) {
                top = std::pow(1.0 - bass_formula(t, params), static_cast<double>(N + 1));
            }
            const double nn = static_cast<double>(N);
            dy[N - 1] = -nn * (p + q) * y[N - 1] + nn * q * top;
        };
    }
    else if (system == LimitSystem::circle) {
        rhs = [&, N](double t, std::span<const double> y, std::span<double> dy) {
            for (std::size_t n = 1; n < N; ++n) {
                dy[n - 1] = -(static_cast<double>(n) * p + q) * y[n - 1] + q * y[n];
            }
            double top = 0.0;
            if (closure == Closure::analytic) {
                top = std::exp(-static_cast<double>(N) * p * t) * (1.0 - circle_limit(t, params));
            }
            dy[N - 1] = -(static_cast<double>(N) * p + q) * y[N - 1] + q * top;
        };
    }
    else {
        throw std::invalid_argument("solve_truncated_limit: use solve_truncated_kgroup_limit for K groups");
    }
    return run_reduced(rhs, N, grid, cfg);
}

KGroupLimitSolution solve_truncated_kgroup_limit(const HeteroSpec& spec, std::size_t n_max,
                                                 std::span<const double> grid, const IntegratorConfig& cfg,
                                                 Closure closure)
{
    const kernels::CompositionOperator op(spec, n_max);
    const auto& layout = op.layout();
    const std::size_t K = spec.K();
    const std::size_t N = op.states();
    // The closure needs u_{e_j} of the limit; it is carried along as K extra unknowns
    // obeying g_j' = -(p_j + sum_i a_i Q(i, j)(1 - g_i)) g_j.
    std::vector<std::vector<std::size_t>> boundary_k;
    boundary_k.reserve(op.boundary().size());
    for (const auto& b : op.boundary()) {
        auto k = layout.decode(b.row);
        ++k[b.group];
        boundary_k.push_back(std::move(k));
    }
    VectorField rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        op.apply(y.first(N), dy.first(N));
        const auto g = y.subspan(N, K);
        if (closure == Closure::analytic) {
            for (std::size_t b = 0; b < boundary_k.size(); ++b) {
                double v = 1.0;
                for (std::size_t j = 0; j < K; ++j) {
                    v *= std::pow(g[j], static_cast<double>(boundary_k[b][j]));
                }
                dy[op.boundary()[b].row] += op.boundary()[b].coeff * v;
            }
        }
        for (std::size_t j = 0; j < K; ++j) {
            double infl = spec.p[j];
            for (std::size_t i = 0; i < K; ++i) {
                infl += spec.a[i] * spec.Q(i, j) * (1.0 - g[i]);
            }
            dy[N + j] = -infl * g[j];
        }
    };
    KGroupLimitSolution sol;
    sol.layout = layout;
    sol.t.assign(grid.begin(), grid.end());
    sol.states.resize(grid.size());
    for (std::size_t idx = 0; idx < N; ++idx) {
        if (op.active(idx)) {
            sol.active.push_back(idx);
        }
    }
    std::vector<double> y0(N + K, 1.0);
    integrate(rhs, y0, grid, cfg, [&](std::size_t i, double, std::span<const double> y) {
        sol.states[i].assign(y.begin(), y.begin() + static_cast<long>(N));
    });
    return sol;
}

double coefficient_gap(LimitSystem system, std::size_t M, const BassParams& params, double eps)
{
    if (system == LimitSystem::complete) {
        if (M < 2) {
            throw std::invalid_argument("coefficient_gap: complete system needs M >= 2");
        }
        double best = 0.0;
        for (std::size_t n = 1; n <= M; ++n) {
            const double gap = params.q * static_cast<double>(n - 1) / static_cast<double>(M - 1);
            best = std::max(best, gap * std::exp(-static_cast<double>(n) * eps));
        }
        return best;
    }
    if (system == LimitSystem::circle) {
        return params.q * std::exp(-static_cast<double>(M) * eps);
    }
    throw std::invalid_argument("coefficient_gap: complete or circle only");
}

namespace
{

void check_eps(const BassParams& params, double eps)
{
    const EpsNormParams ep(params.p, params.q);
    if (!(eps > 0.0) || !(eps < ep.eps_tilde())) {
        throw std::invalid_argument("eps must lie in (0, ln(1 + p/q)) = (0, " + std::to_string(ep.eps_tilde()) + ")");
    }
}

} // namespace

double embedded_bound_rhs(LimitSystem system, std::size_t M, const BassParams& params, double eps)
{
    check_eps(params, eps);
    const EpsNormParams ep(params.p, params.q);
    return 2.0 * coefficient_gap(system, M, params, eps) / ((params.p + params.q) * (1.0 - ep.theta(eps)));
}

double embedded_diff_norm(LimitSystem system, std::size_t M, const BassParams& params, double eps,
                          std::span<const double> grid, const IntegratorConfig& cfg)
{
    check_eps(params, eps);
    ReducedSolution sol;
    if (system == LimitSystem::complete) {
        sol = solve_complete_reduced(M, params, grid, cfg);
    }
    else if (system == LimitSystem::circle) {
        sol = solve_circle_reduced(M, params, grid, cfg);
    }
    else {
        throw std::invalid_argument("embedded_diff_norm: complete or circle only");
    }
    double norm = 0.0;
    std::vector<double> diff(M);
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
        const auto lim = limit_ansatz(system, params, sol.t[i], M);
        for (std::size_t n = 0; n < M; ++n) {
            diff[n] = sol.S[i][n] - lim[n];
        }
        norm = std::max(norm, eps_norm(diff, eps, 1));
    }
    return norm;
}

} // namespace bassnet
