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
#ifndef BASSNET_ODEINT_HPP
#define BASSNET_ODEINT_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bassnet
{

/// Raised when an integration cannot be completed (step budget, non-finite derivative).
class IntegrationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Method { dormand_prince_45 };

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_steps = 5'000'000;
    Method method = Method::dormand_prince_45;
};

void validate(const IntegratorConfig& cfg);

/// dy/dt = f(t, y). Must write every component of dydt.
using VectorField = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Receives the state at grid point `index`; the span is only valid during the call.
using GridObserver = std::function<void(std::size_t index, double t, std::span<const double> y)>;

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_calls = 0;
};

/**
 * Adaptive Dormand-Prince 5(4) integration with dense output.
 *
 * The state is reported at every point of `grid` (strictly increasing, starting at 0)
 * through the fourth-order continuous extension, so step selection is independent of
 * the grid. Throws IntegrationError when max_steps is exhausted or the vector field
 * returns a non-finite value.
 */
IntegrationStats integrate(const VectorField& rhs, std::span<const double> y0, std::span<const double> grid,
                           const IntegratorConfig& cfg, const GridObserver& observer);

/// Stored solution: states[i] is the state at grid[i].
struct StateHistory {
    std::vector<double> t;
    std::vector<std::vector<double>> states;
    IntegrationStats stats;

    std::vector<double> component(std::size_t i) const;
};

StateHistory integrate(const VectorField& rhs, std::span<const double> y0, std::span<const double> grid,
                       const IntegratorConfig& cfg = {});

/// max_i |a_i - b_i|. Throws std::invalid_argument on length mismatch.
double sup_diff(std::span<const double> a, std::span<const double> b);

/// max_i (a_i - b_i).
double signed_sup_diff(std::span<const double> a, std::span<const double> b);

enum class FitModel { log_log, semi_log };

std::string to_string(FitModel model);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    FitModel model = FitModel::log_log;
};

/// Ordinary least squares of log y against log x (log-log) or against x (semi-log).
FitResult fit_line(std::span<const double> x, std::span<const double> y, FitModel model);

/// Weighted sup-norm parameters for a homogeneous system with rates p, q > 0.
struct EpsNormParams {
    double p = 0.0;
    double q = 0.0;

    EpsNormParams(double p_, double q_);

    /// ln(1 + p/q): the supremum of admissible weights.
    double eps_tilde() const;
    /// q e^eps / (p + q); below 1 for 0 <= eps < eps_tilde.
    double theta(double eps) const;
};

/// sup_n e^{-eps n} |v_n|, where v[i] carries index n = first_index + i.
double eps_norm(std::span<const double> v, double eps, std::size_t first_index = 1);

/// sup_i e^{-eps n_i} |v_i| for an arbitrary index set with weights n_i (e.g. n(k) = sum_j k_j).
double eps_norm(std::span<const double> v, std::span<const std::size_t> n_of_index, double eps);

/// Time-dependent norm: sup over the supplied snapshots of eps_norm.
double eps_norm_over_time(const std::vector<std::vector<double>>& snapshots, double eps, std::size_t first_index = 1);

} // namespace bassnet

#endif // BASSNET_ODEINT_HPP
