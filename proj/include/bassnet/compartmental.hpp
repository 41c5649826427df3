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
#ifndef BASSNET_COMPARTMENTAL_HPP
#define BASSNET_COMPARTMENTAL_HPP

#include "bassnet/model.hpp"
#include "bassnet/odeint.hpp"

#include <span>
#include <vector>

namespace bassnet
{

/// Closed-form solution of f' = (1 - f)(p + q f), f(0) = 0. Requires p > 0.
double bass_formula(double t, const BassParams& params);

/// Limit adoption curve on the circle: 1 - exp(-(p + q) t + q (1 - e^{-pt}) / p). Requires p > 0.
double circle_limit(double t, const BassParams& params);

std::vector<double> bass_formula(std::span<const double> t, const BassParams& params);
std::vector<double> circle_limit(std::span<const double> t, const BassParams& params);

/// Group-level adoption fractions f_k (fractions of the whole population) and their sum.
struct HeteroTrajectory {
    std::vector<double> t;
    std::vector<std::vector<double>> f; // f[k][i] at t[i]
    std::vector<double> f_het;

    std::size_t K() const { return f.size(); }
    Trajectory to_trajectory() const;
};

/// f_k' = (a_k - f_k)(p_k + sum_m Q(m, k) f_m), f_k(0) = 0.
HeteroTrajectory solve_hetero(const HeteroSpec& spec, std::span<const double> grid, const IntegratorConfig& cfg = {});

/// Finite-population variant with a_k replaced by M_k / M.
HeteroTrajectory solve_hetero_finiteM(const HeteroSpec& spec, const GroupSizes& sizes, std::span<const double> grid,
                                      const IntegratorConfig& cfg = {});

/// Mild heterogeneity: every adopter influences group k with q_k, f_k' = (a_k - f_k)(p_k + q_k f_het).
HeteroTrajectory solve_mild_hetero(std::span<const double> p, std::span<const double> q, std::span<const double> a,
                                   std::span<const double> grid, const IntegratorConfig& cfg = {});

/// HeteroSpec with Q(m, k) = q_k for all m.
HeteroSpec mild_spec(std::span<const double> p, std::span<const double> q, std::span<const double> a);

enum class InitialSystem {
    homogeneous,  ///< f' = (1 - f)(p + q f)
    two_group_hub ///< f1' = (1/2 - f1) 4q f2, f2' = (1/2 - f2) 2p
};

struct InitialDerivatives {
    double first = 0.0;
    double second = 0.0;
};

/**
 * f'(0) and f''(0) of the aggregate adoption curve, estimated by one-sided five-point
 * finite differences with step 1e-3 / (p + q) on the integrated trajectory.
 */
InitialDerivatives second_derivatives_at_zero(InitialSystem system, const BassParams& params);

/// Two-group system where only group 2 has external adopters and only group-2 adopters influence group 1.
HeteroSpec two_group_hub_spec(const BassParams& params);

} // namespace bassnet

#endif // BASSNET_COMPARTMENTAL_HPP
