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
#ifndef BASSNET_LAB_HPP
#define BASSNET_LAB_HPP

#include "bassnet/compartmental.hpp"
#include "bassnet/master_eq.hpp"
#include "bassnet/model.hpp"
#include "bassnet/odeint.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace bassnet
{

enum class Family { complete, circle, kgroup };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// Adoption level 1 - f_limit(T) that defines the default horizon.
constexpr double kHorizonLevel = 1e-4;

double horizon_complete(const BassParams& params);
double horizon_circle(const BassParams& params);
double horizon_kgroup(const HeteroSpec& spec, const IntegratorConfig& cfg = {});

struct StudyOptions {
    std::size_t points = 400;
    double T = 0.0;                ///< 0 selects the horizon rule
    std::size_t refine_points = 800; ///< second grid for the grid-independence check; 0 disables it
    IntegratorConfig cfg{};
    std::size_t budget = kDefaultCompositionBudget;
    double floor = 1e-13;          ///< circle: smaller differences are dropped from the fit
};

/// sup_t (f_limit - f_discrete) for a list of population sizes, with a rate fit.
struct ConvergenceStudy {
    Family family = Family::complete;
    nlohmann::json params;
    std::vector<std::size_t> Ms;
    std::vector<double> sup_diff;
    std::vector<double> sup_diff_refined; // empty when the check is disabled
    std::vector<std::size_t> dropped;     // sizes removed because the difference was unresolvable
    FitResult fit;
    double T = 0.0;
    std::size_t points = 0;

    /// max_M |refined / base - 1|
    double refinement_change() const;
    bool strictly_decreasing() const;
    nlohmann::json summary() const;
};

ConvergenceStudy study_complete(const BassParams& params, std::span<const std::size_t> Ms,
                                const StudyOptions& options = {});
ConvergenceStudy study_circle(const BassParams& params, std::span<const std::size_t> Ms,
                              const StudyOptions& options = {});
ConvergenceStudy study_kgroup(const HeteroSpec& spec, std::span<const std::size_t> Ms,
                              const StudyOptions& options = {});

/// Per-M analytic bound e^eps * 2 q e^{-M eps} / ((p + q)(1 - theta(eps))) on the circle difference.
double circle_difference_bound(const BassParams& params, std::size_t M, double eps);

/// Writes <family>_sup_diff.csv and <family>_study.json into dir.
void write_study(const ConvergenceStudy& study, const std::filesystem::path& dir);

struct HeteroReport {
    std::vector<double> t;
    std::vector<double> f_het;
    std::vector<double> f_hom;
    std::vector<double> gap; // f_hom - f_het
    std::vector<double> y;   // sum f_k p_k - p f_het + f_het (sum f_k q_k - q f_het)
    std::vector<std::vector<double>> scaled; // f_k / a_k
    BassParams homogenized;
    bool het_below_hom = false;  ///< gap > 0 at every grid t > 0
    bool y_positive = false;     ///< y > 0 at every grid t > 0
    bool groups_ordered = false; ///< f_k/a_k nondecreasing in k at every grid t

    Trajectory to_trajectory() const;
};

/// Mild heterogeneity: group k has external rate p_k, internal rate q_k and share a_k.
HeteroReport hetero_compare(std::span<const double> p, std::span<const double> q, std::span<const double> a,
                            std::span<const double> grid, const IntegratorConfig& cfg = {});

struct CounterexampleReport {
    std::vector<double> t;
    std::vector<double> f_het;
    std::vector<double> f_hom;
    bool het_leads_initially = false;
    double lead_until = 0.0;             ///< last grid time of the initial run with f_het > f_hom
    std::optional<double> crossing_time; ///< first grid time after the lead with f_het <= f_hom
    InitialDerivatives het0;
    InitialDerivatives hom0;

    Trajectory to_trajectory() const;
};

/// Two-group hub population against the homogeneous model with the same averaged rates.
CounterexampleReport hetero_counterexample(const BassParams& params, std::span<const double> grid,
                                           const IntegratorConfig& cfg = {});

enum class ToyRule {
    unit,     ///< a(k) = 1
    geometric ///< a(k) = 3^k
};

std::string to_string(ToyRule rule);
ToyRule toy_rule_from_string(const std::string& name);

/// Largest M accepted for the geometric rule.
constexpr std::size_t kMaxGeometricToyM = 12;

struct ToyRun {
    ToyRule rule = ToyRule::unit;
    std::size_t M = 0;
    std::vector<double> t;
    std::vector<std::vector<double>> u;         // u[k-1][i]
    std::vector<std::vector<double>> reference; // unit: P_{M-k}(t) e^{-t}; geometric: 2 e^{-3^k t}
    IntegratorConfig cfg;

    /// unit: max |u - reference|; geometric: max (u - reference), which is <= 0 when the bound holds.
    double max_excess() const;
    Trajectory to_trajectory() const;
};

/// u_k' = a(k)(u_{k+1} - u_k), u_k(0) = 1, u_{M+1} = 0. The geometric rule uses a tightened tolerance.
ToyRun toy_embedding(ToyRule rule, std::size_t M, std::span<const double> grid);

struct BoundReport {
    LimitSystem system = LimitSystem::complete;
    std::size_t M = 0;
    BassParams params;
    double eps = 0.0;
    double lhs = 0.0;       ///< |||u^(M) - u^inf|||_eps
    double rhs = 0.0;       ///< 2 sup_n |q - q_n| e^{-n eps} / ((p + q)(1 - theta))
    double rhs_coarse = 0.0; ///< complete: with sup_n replaced by q e^{-1} / (eps (M - 1)); circle: equal to rhs
    bool holds = false;

    nlohmann::json to_json() const;
};

BoundReport verify_bound(LimitSystem system, std::size_t M, const BassParams& params, double eps,
                         std::span<const double> grid, const IntegratorConfig& cfg = {});

} // namespace bassnet

#endif // BASSNET_LAB_HPP
