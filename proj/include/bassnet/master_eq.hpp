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
#ifndef BASSNET_MASTER_EQ_HPP
#define BASSNET_MASTER_EQ_HPP

#include "bassnet/master_kernels.hpp"
#include "bassnet/model.hpp"
#include "bassnet/odeint.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bassnet
{

/// Largest network accepted by the full subset solver (2^M - 1 unknowns).
constexpr std::size_t kMaxFullMasterNodes = 14;

/// Default cap on the number of composition states of the K-group system.
constexpr std::size_t kDefaultCompositionBudget = 2'000'000;

/// Canonical key of a node subset: bit i is set iff node i belongs to it.
using SubsetKey = std::uint32_t;

SubsetKey subset_key(std::span<const std::size_t> nodes);

/// Nonadopter probabilities [S_A](t) of every nonempty node subset A.
class SubsetTable
{
public:
    SubsetTable(std::size_t nodes, std::vector<double> t, std::vector<std::vector<double>> values);

    std::size_t nodes() const { return nodes_; }
    const std::vector<double>& t() const { return t_; }

    /// [S_A] at grid index i. The empty set has probability 1.
    double at(SubsetKey key, std::size_t i) const { return values_[i][key]; }
    std::vector<double> series(SubsetKey key) const;

    /// 1 - (1/M) sum_j [S_j]: expected adopter fraction.
    const std::vector<double>& f_discrete() const { return f_discrete_; }

    Trajectory to_trajectory() const;

private:
    std::size_t nodes_;
    std::vector<double> t_;
    std::vector<std::vector<double>> values_;
    std::vector<double> f_discrete_;
};

/// Integrates the full subset master system of an explicit or dense network with at most 14 nodes.
SubsetTable solve_full_master(const NetworkInstance& net, std::span<const double> grid,
                              const IntegratorConfig& cfg = {});

/// [S^n](t) for n = 1..M of a symmetry-reduced system, plus f_discrete = 1 - [S^1].
struct ReducedSolution {
    std::vector<double> t;
    std::vector<std::vector<double>> S; // S[i][n-1] at t[i]
    std::vector<double> f_discrete;

    std::size_t levels() const { return S.empty() ? 0 : S.front().size(); }
    std::vector<double> level(std::size_t n) const;
    Trajectory to_trajectory() const;
};

/// Homogeneous complete network: d[S^n]/dt = -n(p + q_n)[S^n] + n q_n [S^{n+1}], q_n = q (M-n)/(M-1).
ReducedSolution solve_complete_reduced(std::size_t M, const BassParams& params, std::span<const double> grid,
                                       const IntegratorConfig& cfg = {});

/// Homogeneous circle, contiguous runs: d[S^n]/dt = -(n p + q)[S^n] + q [S^{n+1}], d[S^M]/dt = -M p [S^M].
ReducedSolution solve_circle_reduced(std::size_t M, const BassParams& params, std::span<const double> grid,
                                     const IntegratorConfig& cfg = {});

struct KGroupOptions {
    std::size_t budget = kDefaultCompositionBudget;
    bool keep_states = false; ///< store every composition probability at every grid point
};

/// Composition-vector probabilities u_k of the K-group network.
struct KGroupSolution {
    GroupSizes sizes;
    kernels::CompositionLayout layout;
    std::vector<double> t;
    std::vector<std::vector<double>> unit; // unit[j][i] = u_{e_j}(t_i)
    std::vector<double> f_discrete;        // 1 - sum_j (M_j/M) u_{e_j}
    std::vector<std::vector<double>> states; // only with keep_states

    double u(std::span<const std::size_t> k, std::size_t i) const;
    Trajectory to_trajectory() const;
};

KGroupSolution solve_kgroup_reduced(const HeteroSpec& spec, const GroupSizes& sizes, std::span<const double> grid,
                                    const IntegratorConfig& cfg = {}, const KGroupOptions& options = {});

enum class LimitSystem { complete, circle, kgroup };
enum class Closure {
    analytic, ///< top neighbour taken from the exact product/exponential ansatz
    zero      ///< top neighbour dropped
};

/// Infinite limit systems truncated at level N (complete, circle).
ReducedSolution solve_truncated_limit(LimitSystem system, const BassParams& params, std::size_t levels,
                                      std::span<const double> grid, const IntegratorConfig& cfg = {},
                                      Closure closure = Closure::analytic);

/// Truncated K-group limit system on n(k) <= n_max, closed with prod_j u_{e_j}^{k_j}.
struct KGroupLimitSolution {
    kernels::CompositionLayout layout;
    std::vector<double> t;
    std::vector<std::vector<double>> states; // states[i][idx]
    std::vector<std::size_t> active;         // indices with 1 <= n(k) <= n_max
};

KGroupLimitSolution solve_truncated_kgroup_limit(const HeteroSpec& spec, std::size_t n_max,
                                                 std::span<const double> grid, const IntegratorConfig& cfg = {},
                                                 Closure closure = Closure::analytic);

/// Closed-form limit values u_n^inf(t) for n = 1..levels (complete: (1 - f_Bass)^n, circle: e^{-(n-1)pt}(1 - f_1D)).
std::vector<double> limit_ansatz(LimitSystem system, const BassParams& params, double t, std::size_t levels);

/// Analytic right side 2 sup_n(|q - q_n^(M)| e^{-n eps}) / ((p + q)(1 - theta(eps))) of the embedded-system estimate.
double embedded_bound_rhs(LimitSystem system, std::size_t M, const BassParams& params, double eps);

/// sup_n |q - q_n^(M)| e^{-n eps} for the embedded complete or circle system.
double coefficient_gap(LimitSystem system, std::size_t M, const BassParams& params, double eps);

/**
 * |||u^(M) - u^inf|||_eps over the grid: exact reduced solution for n <= M against the
 * closed-form limit values. Components n > M coincide and contribute nothing.
 * Requires p, q > 0 and 0 < eps < ln(1 + p/q).
 */
double embedded_diff_norm(LimitSystem system, std::size_t M, const BassParams& params, double eps,
                          std::span<const double> grid, const IntegratorConfig& cfg = {});

std::string to_string(LimitSystem system);

} // namespace bassnet

#endif // BASSNET_MASTER_EQ_HPP
