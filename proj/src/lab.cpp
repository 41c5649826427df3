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
#include "bassnet/lab.hpp"

#include "bassnet/csv.hpp"
#include "bassnet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bassnet
{

namespace
{

double bisect_horizon(const std::function<double(double)>& remaining)
{
    double hi = 1.0;
    while (remaining(hi) >= kHorizonLevel) {
        hi *= 2.0;
        if (hi > 1e9) {
            throw std::invalid_argument("horizon: adoption never reaches the target level");
        }
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (remaining(mid) < kHorizonLevel ? hi : lo) = mid;
    }
    return hi;
}

/// Base grid, refined grid and their sorted union with index maps into it.
struct StudyGrids {
    std::vector<double> merged;
    std::vector<std::size_t> base;
    std::vector<std::size_t> refined;
};

std::vector<std::size_t> locate(const std::vector<double>& merged, const std::vector<double>& g)
{
    std::vector<std::size_t> idx(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        idx[i] = static_cast<std::size_t>(std::lower_bound(merged.begin(), merged.end(), g[i]) - merged.begin());
    }
    return idx;
}

StudyGrids make_grids(double T, std::size_t points, std::size_t refine_points)
{
    const auto g1 = uniform_grid(T, points);
    std::vector<double> g2;
    if (refine_points > 0) {
        g2 = uniform_grid(T, refine_points);
    }
    StudyGrids g;
    g.merged = g1;
    g.merged.insert(g.merged.end(), g2.begin(), g2.end());
    std::sort(g.merged.begin(), g.merged.end());
    g.merged.erase(std::unique(g.merged.begin(), g.merged.end()), g.merged.end());
    g.base = locate(g.merged, g1);
    g.refined = locate(g.merged, g2);
    return g;
}

double max_gap(const std::vector<double>& lim, const std::vector<double>& disc, const std::vector<std::size_t>& idx)
{
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i : idx) {
        best = std::max(best, lim[i] - disc[i]);
    }
    return best;
}

using DiscreteSolve = std::function<std::vector<double>(std::size_t M, std::span<const double> grid)>;

ConvergenceStudy run_study(Family family, nlohmann::json params, std::vector<std::size_t> Ms, double T,
                           const StudyOptions& options, const std::vector<double>& merged_limit,
                           const StudyGrids& grids, const DiscreteSolve& solve)
{
    ConvergenceStudy study;
    study.family = family;
    study.params = std::move(params);
    study.T = T;
    study.points = options.points;
    std::vector<double> base(Ms.size()), refined(Ms.size());
    parallel_for(Ms.size(), [&](std::size_t m) {
        const auto disc = solve(Ms[m], grids.merged);
        base[m] = max_gap(merged_limit, disc, grids.base);
        if (!grids.refined.empty()) {
            refined[m] = max_gap(merged_limit, disc, grids.refined);
        }
    });
    std::vector<double> x, y;
    for (std::size_t m = 0; m < Ms.size(); ++m) {
        if (family == Family::circle && base[m] < options.floor) {
            study.dropped.push_back(Ms[m]);
            continue;
        }
        study.Ms.push_back(Ms[m]);
        study.sup_diff.push_back(base[m]);
        if (!grids.refined.empty()) {
            study.sup_diff_refined.push_back(refined[m]);
        }
        x.push_back(static_cast<double>(Ms[m]));
        y.push_back(base[m]);
    }
    const FitModel model = family == Family::circle ? FitModel::semi_log : FitModel::log_log;
    const bool fittable = x.size() >= 2 && std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; });
    if (fittable) {
        study.fit = fit_line(x, y, model);
    }
    else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        study.fit = FitResult{nan, nan, nan, model};
    }
    return study;
}

std::vector<std::size_t> checked_sizes(std::span<const std::size_t> Ms, std::size_t min_M)
{
    if (Ms.empty()) {
        throw std::invalid_argument("study: empty M list");
    }
    for (std::size_t i = 0; i < Ms.size(); ++i) {
        if (Ms[i] < min_M) {
            throw std::invalid_argument("study: M must be >= " + std::to_string(min_M));
        }
        if (i > 0 && Ms[i] <= Ms[i - 1]) {
            throw std::invalid_argument("study: M list must be strictly increasing");
        }
    }
    return {Ms.begin(), Ms.end()};
}

} // namespace

std::string to_string(Family family)
{
    switch (family) {
    case Family::complete:
        return "complete";
    case Family::circle:
        return "circle";
    case Family::kgroup:
        return "kgroup";
    }
    return "unknown";
}

Family family_from_string(const std::string& name)
{
    if (name == "complete") {
        return Family::complete;
    }
    if (name == "circle") {
        return Family::circle;
    }
    if (name == "kgroup") {
        return Family::kgroup;
    }
    throw std::invalid_argument("unknown family '" + name + "' (complete, circle, kgroup)");
}

double horizon_complete(const BassParams& params)
{
    validate(params, true);
    return bisect_horizon([&](double t) { return 1.0 - bass_formula(t, params); });
}

double horizon_circle(const BassParams& params)
{
    validate(params, true);
    return bisect_horizon([&](double t) { return 1.0 - circle_limit(t, params); });
}

double horizon_kgroup(const HeteroSpec& spec, const IntegratorConfig& cfg)
{
    validate(spec);
    double T = 64.0;
    for (;;) {
        const auto grid = uniform_grid(T, 4097);
        const auto tr = solve_hetero(spec, grid, cfg);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (1.0 - tr.f_het[i] < kHorizonLevel) {
                return grid[i];
            }
        }
        T *= 2.0;
        if (T > 1e7) {
            throw std::invalid_argument("horizon: adoption never reaches the target level");
        }
    }
}

double ConvergenceStudy::refinement_change() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < sup_diff_refined.size(); ++i) {
        worst = std::max(worst, std::abs(sup_diff_refined[i] / sup_diff[i] - 1.0));
    }
    return worst;
}

bool ConvergenceStudy::strictly_decreasing() const
{
    for (std::size_t i = 0; i < sup_diff.size(); ++i) {
        if (!(sup_diff[i] > 0.0) || (i > 0 && !(sup_diff[i] < sup_diff[i - 1]))) {
            return false;
        }
    }
    return true;
}

nlohmann::json ConvergenceStudy::summary() const
{
    nlohmann::json j;
    j["family"] = to_string(family);
    j["params"] = params;
    j["fit"] = {{"model", to_string(fit.model)},
                {"slope", fit.slope},
                {"intercept", fit.intercept},
                {"rms", fit.rms_residual}};
    j["grid"] = {{"T", T}, {"points", points}};
    j["M"] = Ms;
    j["sup_diff"] = sup_diff;
    if (!sup_diff_refined.empty()) {
        j["refinement_change"] = refinement_change();
    }
    if (!dropped.empty()) {
        j["dropped_M"] = dropped;
    }
    return j;
}

ConvergenceStudy study_complete(const BassParams& params, std::span<const std::size_t> Ms, const StudyOptions& options)
{
    validate(params, true);
    auto sizes = checked_sizes(Ms, 2);
    const double T = options.T > 0.0 ? options.T : horizon_complete(params);
    const auto grids = make_grids(T, options.points, options.refine_points);
    const auto limit = bass_formula(grids.merged, params);
    return run_study(Family::complete, params, std::move(sizes), T, options, limit, grids,
                     [&](std::size_t M, std::span<const double> grid) {
                         return solve_complete_reduced(M, params, grid, options.cfg).f_discrete;
                     });
}

ConvergenceStudy study_circle(const BassParams& params, std::span<const std::size_t> Ms, const StudyOptions& options)
{
    validate(params, true);
    auto sizes = checked_sizes(Ms, 3);
    const double T = options.T > 0.0 ? options.T : horizon_circle(params);
    const auto grids = make_grids(T, options.points, options.refine_points);
    const auto limit = circle_limit(grids.merged, params);
    return run_study(Family::circle, params, std::move(sizes), T, options, limit, grids,
                     [&](std::size_t M, std::span<const double> grid) {
                         return solve_circle_reduced(M, params, grid, options.cfg).f_discrete;
                     });
}

ConvergenceStudy study_kgroup(const HeteroSpec& spec, std::span<const std::size_t> Ms, const StudyOptions& options)
{
    validate(spec);
    auto requested = checked_sizes(Ms, 1);
    std::vector<std::size_t> sizes, over;
    for (std::size_t M : requested) {
        const auto gs = group_sizes(spec, M);
        (kernels::CompositionLayout::count(gs.M_k) <= options.budget ? sizes : over).push_back(M);
    }
    if (sizes.empty()) {
        throw std::length_error("study_kgroup: every M exceeds the composition budget");
    }
    const double T = options.T > 0.0 ? options.T : horizon_kgroup(spec, options.cfg);
    const auto grids = make_grids(T, options.points, options.refine_points);
    const auto limit = solve_hetero(spec, grids.merged, options.cfg).f_het;
    KGroupOptions kopt;
    kopt.budget = options.budget;
    auto study = run_study(Family::kgroup, spec, std::move(sizes), T, options, limit, grids,
                           [&](std::size_t M, std::span<const double> grid) {
                               return solve_kgroup_reduced(spec, group_sizes(spec, M), grid, options.cfg, kopt)
                                   .f_discrete;
                           });
    study.dropped = std::move(over);
    return study;
}

double circle_difference_bound(const BassParams& params, std::size_t M, double eps)
{
    return std::exp(eps) * embedded_bound_rhs(LimitSystem::circle, M, params, eps);
}

void write_study(const ConvergenceStudy& study, const std::filesystem::path& dir)
{
    const std::string stem = to_string(study.family);
    std::vector<std::string> header{"M", "sup_diff"};
    if (!study.sup_diff_refined.empty()) {
        header.push_back("sup_diff_refined");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < study.Ms.size(); ++i) {
        std::vector<double> row{static_cast<double>(study.Ms[i]), study.sup_diff[i]};
        if (!study.sup_diff_refined.empty()) {
            row.push_back(study.sup_diff_refined[i]);
        }
        rows.push_back(std::move(row));
    }
    write_csv(dir / (stem + "_sup_diff.csv"), header, rows);
    std::ofstream out(dir / (stem + "_study.json"), std::ios::binary);
    out << study.summary().dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("cannot write study summary in " + dir.string());
    }
}

Trajectory HeteroReport::to_trajectory() const
{
    Trajectory tr(t);
    for (std::size_t k = 0; k < scaled.size(); ++k) {
        tr.add("ftilde_" + std::to_string(k + 1), scaled[k]);
    }
    tr.add("f_het", f_het);
    tr.add("f_hom", f_hom);
    tr.add("gap", gap);
    tr.add("y", y);
    return tr;
}

HeteroReport hetero_compare(std::span<const double> p, std::span<const double> q, std::span<const double> a,
                            std::span<const double> grid, const IntegratorConfig& cfg)
{
    const HeteroSpec spec = mild_spec(p, q, a);
    const std::size_t K = spec.K();
    const auto tr = solve_hetero(spec, grid, cfg);
    HeteroReport rep;
    rep.t = tr.t;
    rep.f_het = tr.f_het;
    rep.homogenized = homogenize(spec);
    rep.f_hom = bass_formula(grid, rep.homogenized);
    const double pbar = rep.homogenized.p, qbar = rep.homogenized.q;
    const std::size_t n = grid.size();
    rep.gap.resize(n);
    rep.y.resize(n);
    rep.scaled.assign(K, std::vector<double>(n));
    rep.het_below_hom = rep.y_positive = rep.groups_ordered = true;
    for (std::size_t i = 0; i < n; ++i) {
        double fp = 0.0, fq = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            fp += tr.f[k][i] * p[k];
            fq += tr.f[k][i] * q[k];
            rep.scaled[k][i] = tr.f[k][i] / a[k];
            if (k > 0 && rep.scaled[k][i] < rep.scaled[k - 1][i] - 1e-12) {
                rep.groups_ordered = false;
            }
        }
        const double fh = tr.f_het[i];
        rep.gap[i] = rep.f_hom[i] - fh;
        rep.y[i] = fp - pbar * fh + fh * (fq - qbar * fh);
        if (grid[i] > 0.0) {
            rep.het_below_hom = rep.het_below_hom && rep.gap[i] > 0.0;
            rep.y_positive = rep.y_positive && rep.y[i] > 0.0;
        }
    }
    return rep;
}

Trajectory CounterexampleReport::to_trajectory() const
{
    Trajectory tr(t);
    tr.add("f_het", f_het);
    tr.add("f_hom", f_hom);
    return tr;
}

CounterexampleReport hetero_counterexample(const BassParams& params, std::span<const double> grid,
                                           const IntegratorConfig& cfg)
{
    validate(params, true);
    if (!(params.q > 0.0)) {
        throw std::invalid_argument("hetero_counterexample: q must be positive");
    }
    const HeteroSpec spec = two_group_hub_spec(params);
    const auto tr = solve_hetero(spec, grid, cfg);
    CounterexampleReport rep;
    rep.t = tr.t;
    rep.f_het = tr.f_het;
    rep.f_hom = bass_formula(grid, homogenize(spec));
    std::size_t i = 1;
    while (i < grid.size() && rep.f_het[i] > rep.f_hom[i]) {
        ++i;
    }
    rep.het_leads_initially = i > 1;
    rep.lead_until = grid[i - 1];
    if (rep.het_leads_initially && i < grid.size()) {
        rep.crossing_time = grid[i];
    }
    rep.het0 = second_derivatives_at_zero(InitialSystem::two_group_hub, params);
    rep.hom0 = second_derivatives_at_zero(InitialSystem::homogeneous, params);
    return rep;
}

std::string to_string(ToyRule rule)
{
    return rule == ToyRule::unit ? "unit" : "geometric";
}

ToyRule toy_rule_from_string(const std::string& name)
{
    if (name == "unit") {
        return ToyRule::unit;
    }
    if (name == "geometric") {
        return ToyRule::geometric;
    }
    throw std::invalid_argument("unknown toy rule '" + name + "' (unit, geometric)");
}

double ToyRun::max_excess() const
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < u.size(); ++k) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double d = u[k][i] - reference[k][i];
            worst = std::max(worst, rule == ToyRule::unit ? std::abs(d) : d);
        }
    }
    return worst;
}

Trajectory ToyRun::to_trajectory() const
{
    Trajectory tr(t);
    for (std::size_t k = 0; k < u.size(); ++k) {
        tr.add("u_" + std::to_string(k + 1), u[k]);
    }
    const std::string ref = rule == ToyRule::unit ? "exact_" : "bound_";
    for (std::size_t k = 0; k < reference.size(); ++k) {
        tr.add(ref + std::to_string(k + 1), reference[k]);
    }
    return tr;
}

ToyRun toy_embedding(ToyRule rule, std::size_t M, std::span<const double> grid)
{
    if (M < 1) {
        throw std::invalid_argument("toy_embedding: M must be >= 1");
    }
    if (rule == ToyRule::geometric && M > kMaxGeometricToyM) {
        throw std::invalid_argument("toy_embedding: geometric rule needs M <= " + std::to_string(kMaxGeometricToyM));
    }
    std::vector<double> rate(M);
    for (std::size_t k = 1; k <= M; ++k) {
        rate[k - 1] = rule == ToyRule::unit ? 1.0 : std::pow(3.0, static_cast<double>(k));
    }
    ToyRun run;
    run.rule = rule;
    run.M = M;
    run.t.assign(grid.begin(), grid.end());
    run.cfg.rel_tol = 1e-12;
    run.cfg.abs_tol = rule == ToyRule::unit ? 1e-14 : 1e-20;
    VectorField rhs = [&](double, std::span<const double> u, std::span<double> du) {
        for (std::size_t k = 0; k < M; ++k) {
            const double next = k + 1 < M ? u[k + 1] : 0.0;
            du[k] = rate[k] * (next - u[k]);
        }
    };
    run.u.assign(M, std::vector<double>(grid.size()));
    const std::vector<double> y0(M, 1.0);
    integrate(rhs, y0, grid, run.cfg, [&](std::size_t i, double, std::span<const double> u) {
        for (std::size_t k = 0; k < M; ++k) {
            run.u[k][i] = u[k];
        }
    });
    run.reference.assign(M, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (rule == ToyRule::unit) {
            // u_{M-j} = e^{-t} sum_{m <= j} t^m / m!
            double term = std::exp(-t), sum = 0.0;
            for (std::size_t j = 0; j < M; ++j) {
                if (j > 0) {
                    term *= t / static_cast<double>(j);
                }
                sum += term;
                run.reference[M - 1 - j][i] = sum;
            }
        }
        else {
            for (std::size_t k = 0; k < M; ++k) {
                run.reference[k][i] = 2.0 * std::exp(-rate[k] * t);
            }
        }
    }
    return run;
}

nlohmann::json BoundReport::to_json() const
{
    return {{"system", to_string(system)},
            {"M", M},
            {"params", params},
            {"eps", eps},
            {"lhs", lhs},
            {"rhs", rhs},
            {"rhs_coarse", rhs_coarse},
            {"holds", holds}};
}

BoundReport verify_bound(LimitSystem system, std::size_t M, const BassParams& params, double eps,
                         std::span<const double> grid, const IntegratorConfig& cfg)
{
    if (system == LimitSystem::kgroup) {
        throw std::invalid_argument("verify_bound: complete or circle only");
    }
    BoundReport rep;
    rep.system = system;
    rep.M = M;
    rep.params = params;
    rep.eps = eps;
    rep.rhs = embedded_bound_rhs(system, M, params, eps);
    rep.lhs = embedded_diff_norm(system, M, params, eps, grid, cfg);
    if (system == LimitSystem::complete) {
        const EpsNormParams ep(params.p, params.q);
        rep.rhs_coarse = 2.0 / ((params.p + params.q) * (1.0 - ep.theta(eps))) * params.q * std::exp(-1.0) /
                         (eps * static_cast<double>(M - 1));
    }
    else {
        rep.rhs_coarse = rep.rhs;
    }
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace bassnet
