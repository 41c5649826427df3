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
#include "bassnet/cli.hpp"

#include "bassnet/compartmental.hpp"
#include "bassnet/csv.hpp"
#include "bassnet/lab.hpp"
#include "bassnet/master_eq.hpp"
#include "bassnet/parallel.hpp"
#include "bassnet/stochastic.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#ifndef BASSNET_VERSION
#define BASSNET_VERSION "0.0.0"
#endif

namespace bassnet
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    try {
        return json::parse(in);
    }
    catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_json(const fs::path& path, const json& j)
{
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

std::string num(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

struct Common {
    std::string config;
    std::string out = "bassnet_out";
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    json config_json = json::object();
};

struct Run {
    json resolved = json::object();
    std::vector<std::string> artifacts;
    std::string summary;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--config", c.config, "JSON file with option values; flags take precedence")->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--threads", c.threads, "worker budget (0: BASSNET_THREADS or all cores)");
}

std::string as_flag_value(const json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            s += (s.empty() ? "" : ",") + as_flag_value(e);
        }
        return s;
    }
    if (v.is_number_float()) {
        return format_number(v.get<double>());
    }
    return v.dump();
}

/// Copies config keys into options that were not given on the command line.
void merge_config(CLI::App* sub, Common& c, const std::set<std::string>& consumed)
{
    if (c.config.empty()) {
        return;
    }
    c.config_json = read_json(c.config);
    if (!c.config_json.is_object()) {
        throw std::invalid_argument(c.config + ": expected a JSON object");
    }
    for (const auto& [key, value] : c.config_json.items()) {
        if (key == "network" || key == "spec" || consumed.count(key)) {
            continue;
        }
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") {
            throw std::invalid_argument(c.config + ": unknown key '" + key + "'");
        }
        if (opt->count() > 0) {
            continue;
        }
        opt->add_result(as_flag_value(value));
        opt->run_callback();
    }
}

HeteroSpec spec_input(const Common& c, const std::string& spec_file)
{
    if (!spec_file.empty()) {
        return read_json(spec_file).get<HeteroSpec>();
    }
    if (c.config_json.contains("spec")) {
        return c.config_json.at("spec").get<HeteroSpec>();
    }
    return reference_four_group_spec();
}

double resolve_T(double T, double fallback)
{
    if (T < 0.0 || !std::isfinite(T)) {
        throw std::invalid_argument("--T must be a positive number");
    }
    return T > 0.0 ? T : fallback;
}

// compartmental -----------------------------------------------------------

struct CompartmentalArgs {
    std::string model = "bass";
    double p = 0.02, q = 0.1, T = 0.0;
    std::size_t points = 400;
    std::string spec;
};

Run run_compartmental(const CompartmentalArgs& a, const Common& c, const fs::path& out)
{
    Run run;
    run.resolved = {{"model", a.model}, {"points", a.points}};
    Trajectory tr;
    if (a.model == "bass" || a.model == "circle") {
        const BassParams bp{a.p, a.q};
        const bool bass = a.model == "bass";
        const double T = resolve_T(a.T, bass ? horizon_complete(bp) : horizon_circle(bp));
        const auto grid = uniform_grid(T, a.points);
        tr = Trajectory(grid);
        tr.add("f", bass ? bass_formula(grid, bp) : circle_limit(grid, bp));
        run.resolved.update({{"p", a.p}, {"q", a.q}, {"T", T}});
    }
    else if (a.model == "hetero") {
        const HeteroSpec spec = spec_input(c, a.spec);
        const double T = resolve_T(a.T, horizon_kgroup(spec));
        tr = solve_hetero(spec, uniform_grid(T, a.points)).to_trajectory();
        run.resolved.update({{"spec", spec}, {"T", T}});
    }
    else {
        throw std::invalid_argument("--model must be bass, circle or hetero");
    }
    write_csv(out / "compartmental.csv", tr);
    run.artifacts.push_back("compartmental.csv");
    const auto& f = tr.all().back().second;
    run.summary = a.model + ": f(T=" + num(tr.t().back()) + ") = " + num(f.back());
    return run;
}

// master -------------------------------------------------------------------

struct MasterArgs {
    std::string system = "complete";
    std::size_t M = 8, levels = 30;
    double p = 0.02, q = 0.1, T = 0.0;
    std::size_t points = 400, max_steps = IntegratorConfig{}.max_steps;
    std::string network, spec, closure = "analytic";
};

Run run_master(const MasterArgs& a, const Common& c, const fs::path& out)
{
    Run run;
    const BassParams bp{a.p, a.q};
    run.resolved = {{"system", a.system}, {"points", a.points}};
    Trajectory tr;
    auto grid_for = [&](double fallback) {
        const double T = resolve_T(a.T, fallback);
        run.resolved["T"] = T;
        return uniform_grid(T, a.points);
    };
    IntegratorConfig cfg;
    cfg.max_steps = a.max_steps;
    const Closure closure = a.closure == "zero" ? Closure::zero : Closure::analytic;
    if (a.closure != "zero" && a.closure != "analytic") {
        throw std::invalid_argument("--closure must be analytic or zero");
    }
    if (a.system == "full") {
        json nj;
        if (!a.network.empty()) {
            nj = read_json(a.network);
        }
        else if (c.config_json.contains("network")) {
            nj = c.config_json.at("network");
        }
        else {
            throw std::invalid_argument("master --system full needs --network or a 'network' config entry");
        }
        const NetworkInstance net = network_from_json(nj);
        tr = solve_full_master(net, grid_for(100.0), cfg).to_trajectory();
        run.resolved["network"] = nj;
    }
    else if (a.system == "complete" || a.system == "circle") {
        const bool complete = a.system == "complete";
        const double fallback = bp.p > 0.0 ? (complete ? horizon_complete(bp) : horizon_circle(bp)) : 100.0;
        const auto grid = grid_for(fallback);
        tr = (complete ? solve_complete_reduced(a.M, bp, grid, cfg) : solve_circle_reduced(a.M, bp, grid, cfg)).to_trajectory();
        run.resolved.update({{"M", a.M}, {"p", a.p}, {"q", a.q}});
    }
    else if (a.system == "kgroup") {
        const HeteroSpec spec = spec_input(c, a.spec);
        const auto grid = grid_for(horizon_kgroup(spec));
        tr = solve_kgroup_reduced(spec, group_sizes(spec, a.M), grid, cfg).to_trajectory();
        run.resolved.update({{"M", a.M}, {"spec", spec}});
    }
    else if (a.system == "limit-complete" || a.system == "limit-circle") {
        const bool complete = a.system == "limit-complete";
        validate(bp, true);
        const auto grid = grid_for(complete ? horizon_complete(bp) : horizon_circle(bp));
        tr = solve_truncated_limit(complete ? LimitSystem::complete : LimitSystem::circle, bp, a.levels, grid, cfg,
                                   closure)
                 .to_trajectory();
        run.resolved.update({{"levels", a.levels}, {"p", a.p}, {"q", a.q}, {"closure", a.closure}});
    }
    else {
        throw std::invalid_argument("--system must be full, complete, circle, kgroup, limit-complete or limit-circle");
    }
    write_csv(out / "master.csv", tr);
    run.artifacts.push_back("master.csv");
    run.summary = a.system + ": f_discrete(T=" + num(tr.t().back()) + ") = " + num(tr.series("f_discrete").back());
    return run;
}

// simulate -------------------------------------------------------------------

struct SimulateArgs {
    std::size_t R = 10000, points = 101;
    double T = 0.0;
    std::string network;
};

const std::set<std::string> kNetworkKeys{"family", "M", "p", "q", "spec", "edges"};

json simulate_network_json(const SimulateArgs& a, const Common& c)
{
    if (!a.network.empty()) {
        return read_json(a.network);
    }
    if (c.config_json.contains("network")) {
        return c.config_json.at("network");
    }
    if (c.config_json.contains("family")) {
        json nj = json::object();
        for (const auto& k : kNetworkKeys) {
            if (c.config_json.contains(k)) {
                nj[k] = c.config_json.at(k);
            }
        }
        return nj;
    }
    throw std::invalid_argument("simulate needs --network or a network description in --config");
}

Run run_simulate(const SimulateArgs& a, const Common& c, const fs::path& out)
{
    const json nj = simulate_network_json(a, c);
    const NetworkInstance net = network_from_json(nj);
    const double T = resolve_T(a.T, 100.0);
    const auto grid = uniform_grid(T, a.points);
    const McSummary mc = monte_carlo(net, a.R, grid, c.seed);
    write_mc_summary(mc, out / "mc.csv", out / "mc.json");
    Run run;
    run.resolved = {{"network", nj}, {"R", a.R}, {"T", T}, {"points", a.points}};
    run.artifacts = {"mc.csv", "mc.json"};
    run.summary = "f_mean(T=" + num(T) + ") = " + num(mc.f_mean.back()) + " +/- " + num(mc.f_se.back());
    return run;
}

// converge -------------------------------------------------------------------

struct ConvergeArgs {
    std::string family = "complete";
    double p = 0.02, q = 0.1, T = 0.0;
    std::vector<std::size_t> Ms;
    std::size_t points = 400;
    std::string spec;
};

Run run_converge(const ConvergeArgs& a, const Common& c, const fs::path& out)
{
    const Family fam = family_from_string(a.family);
    StudyOptions opt;
    opt.points = a.points;
    opt.T = a.T;
    std::vector<std::size_t> Ms = a.Ms;
    Run run;
    ConvergenceStudy study;
    if (fam == Family::kgroup) {
        const HeteroSpec spec = spec_input(c, a.spec);
        if (Ms.empty()) {
            Ms = {20, 40, 80, 160};
        }
        study = study_kgroup(spec, Ms, opt);
        run.resolved["spec"] = spec;
    }
    else {
        const BassParams bp{a.p, a.q};
        if (Ms.empty()) {
            Ms = fam == Family::complete ? std::vector<std::size_t>{8, 16, 32, 64, 128, 256}
                                         : std::vector<std::size_t>{3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
        }
        study = fam == Family::complete ? study_complete(bp, Ms, opt) : study_circle(bp, Ms, opt);
        run.resolved.update({{"p", a.p}, {"q", a.q}});
    }
    run.resolved.update({{"family", a.family}, {"Ms", Ms}, {"points", a.points}, {"T", study.T}});
    write_study(study, out);
    run.artifacts = {a.family + "_sup_diff.csv", a.family + "_study.json"};
    run.summary = a.family + ": slope = " + num(study.fit.slope) + " (" + to_string(study.fit.model) + ")";
    return run;
}

// hetero ---------------------------------------------------------------------

struct HeteroArgs {
    std::string mode = "compare";
    std::vector<double> p, q, a;
    double T = 0.0;
    std::size_t points = 400;
};

Run run_hetero(const HeteroArgs& h, const fs::path& out)
{
    Run run;
    run.resolved = {{"mode", h.mode}, {"points", h.points}};
    if (h.mode == "compare") {
        if (h.p.empty() || h.q.empty()) {
            throw std::invalid_argument("hetero compare needs --p and --q lists");
        }
        std::vector<double> a = h.a;
        if (a.empty()) {
            a.assign(h.p.size(), 1.0 / static_cast<double>(h.p.size()));
        }
        const BassParams hom = homogenize(mild_spec(h.p, h.q, a));
        const double T = resolve_T(h.T, horizon_complete(hom));
        const HeteroReport rep = hetero_compare(h.p, h.q, a, uniform_grid(T, h.points));
        write_csv(out / "hetero.csv", rep.to_trajectory());
        double gap = 0.0;
        for (double g : rep.gap) {
            gap = std::max(gap, std::abs(g));
        }
        write_json(out / "hetero.json", {{"het_below_hom", rep.het_below_hom},
                                         {"y_positive", rep.y_positive},
                                         {"groups_ordered", rep.groups_ordered},
                                         {"homogenized", rep.homogenized},
                                         {"max_abs_gap", gap}});
        run.resolved.update({{"p", h.p}, {"q", h.q}, {"a", a}, {"T", T}});
        run.summary = "max |f_hom - f_het| = " + num(gap) + (rep.het_below_hom ? ", f_het < f_hom" : "");
    }
    else if (h.mode == "counterexample") {
        if (h.p.size() != 1 || h.q.size() != 1) {
            throw std::invalid_argument("hetero counterexample needs scalar --p and --q");
        }
        const BassParams bp{h.p[0], h.q[0]};
        const double T = resolve_T(h.T, 2.0 * horizon_complete(bp));
        const CounterexampleReport rep = hetero_counterexample(bp, uniform_grid(T, h.points));
        write_csv(out / "hetero.csv", rep.to_trajectory());
        json j{{"het_leads_initially", rep.het_leads_initially},
               {"lead_until", rep.lead_until},
               {"f2_het", rep.het0.second},
               {"f2_hom", rep.hom0.second}};
        j["crossing_time"] = rep.crossing_time ? json(*rep.crossing_time) : json(nullptr);
        write_json(out / "hetero.json", j);
        run.resolved.update({{"p", bp.p}, {"q", bp.q}, {"T", T}});
        run.summary = "f''(0) ratio het/hom = " + num(rep.het0.second / rep.hom0.second) +
                      (rep.crossing_time ? ", crossing at t = " + num(*rep.crossing_time) : "");
    }
    else {
        throw std::invalid_argument("--mode must be compare or counterexample");
    }
    run.artifacts = {"hetero.csv", "hetero.json"};
    return run;
}

// toy ------------------------------------------------------------------------

struct ToyArgs {
    std::string rule = "unit";
    std::size_t M = 6, points = 101;
    double T = 0.0;
};

Run run_toy(const ToyArgs& a, const fs::path& out)
{
    const ToyRule rule = toy_rule_from_string(a.rule);
    const double T = resolve_T(a.T, 1.0);
    const ToyRun toy = toy_embedding(rule, a.M, uniform_grid(T, a.points));
    write_csv(out / "toy.csv", toy.to_trajectory());
    Run run;
    run.resolved = {{"rule", a.rule}, {"M", a.M}, {"T", T}, {"points", a.points}};
    run.artifacts = {"toy.csv"};
    run.summary = a.rule + ": u_1(T=" + num(T) + ") = " + num(toy.u[0].back());
    return run;
}

// bound ----------------------------------------------------------------------

struct BoundArgs {
    std::string system = "complete";
    std::size_t M = 32, points = 400;
    double p = 0.02, q = 0.1, eps = 0.0, eps_fraction = 0.5, T = 0.0;
};

Run run_bound(const BoundArgs& a, const fs::path& out)
{
    const BassParams bp{a.p, a.q};
    validate(bp, true);
    LimitSystem sys;
    if (a.system == "complete") {
        sys = LimitSystem::complete;
    }
    else if (a.system == "circle") {
        sys = LimitSystem::circle;
    }
    else {
        throw std::invalid_argument("--system must be complete or circle");
    }
    const double eps = a.eps > 0.0 ? a.eps : a.eps_fraction * EpsNormParams(a.p, a.q).eps_tilde();
    const double T =
        resolve_T(a.T, sys == LimitSystem::complete ? horizon_complete(bp) : horizon_circle(bp));
    const BoundReport rep = verify_bound(sys, a.M, bp, eps, uniform_grid(T, a.points));
    write_json(out / "bound.json", rep.to_json());
    Run run;
    run.resolved = {{"system", a.system}, {"M", a.M}, {"p", a.p}, {"q", a.q}, {"eps", eps}, {"T", T},
                    {"points", a.points}};
    run.artifacts = {"bound.json"};
    run.summary = "lhs = " + num(rep.lhs) + (rep.holds ? " <= " : " > ") + "rhs = " + num(rep.rhs);
    return run;
}

} // namespace

NetworkInstance network_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("family")) {
        throw std::invalid_argument("network description needs a 'family' entry");
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "complete" || family == "circle") {
        const BassParams bp{j.at("p").get<double>(), j.at("q").get<double>()};
        const std::size_t M = j.at("M").get<std::size_t>();
        return family == "complete" ? make_complete(M, bp) : make_circle(M, bp);
    }
    if (family == "kgroup") {
        return make_kgroup(j.at("spec").get<HeteroSpec>(), j.at("M").get<std::size_t>()).first;
    }
    if (family == "explicit") {
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3) {
                throw std::invalid_argument("explicit network: edges are [from, to, weight] triples");
            }
            edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
        }
        return NetworkInstance(j.at("p").get<std::vector<double>>(), std::move(edges));
    }
    throw std::invalid_argument("unknown network family '" + family + "'");
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Discrete and compartmental Bass diffusion laboratory", "bassnet"};
    app.set_version_flag("--version", BASSNET_VERSION);
    app.require_subcommand(1);

    Common common;

    CompartmentalArgs ca;
    auto* s_comp = app.add_subcommand("compartmental", "closed-form or integrated compartmental model");
    s_comp->add_option("--model", ca.model, "bass, circle or hetero");
    s_comp->add_option("--p", ca.p);
    s_comp->add_option("--q", ca.q);
    s_comp->add_option("--T", ca.T, "horizon (0: until 1 - f < 1e-4)");
    s_comp->add_option("--points", ca.points);
    s_comp->add_option("--spec", ca.spec, "hetero spec JSON")->check(CLI::ExistingFile);

    MasterArgs ma;
    auto* s_master = app.add_subcommand("master", "master-equation solvers");
    s_master->add_option("--system", ma.system, "full, complete, circle, kgroup, limit-complete, limit-circle");
    s_master->add_option("--M", ma.M);
    s_master->add_option("--p", ma.p);
    s_master->add_option("--q", ma.q);
    s_master->add_option("--levels", ma.levels, "truncation level of limit systems");
    s_master->add_option("--closure", ma.closure, "analytic or zero");
    s_master->add_option("--network", ma.network, "network JSON for --system full")->check(CLI::ExistingFile);
    s_master->add_option("--spec", ma.spec, "hetero spec JSON")->check(CLI::ExistingFile);
    s_master->add_option("--T", ma.T);
    s_master->add_option("--points", ma.points);
    s_master->add_option("--max-steps", ma.max_steps, "integrator step budget");

    SimulateArgs sa;
    auto* s_sim = app.add_subcommand("simulate", "Monte Carlo simulation");
    s_sim->add_option("--network", sa.network, "network JSON")->check(CLI::ExistingFile);
    s_sim->add_option("--R", sa.R, "replicates");
    s_sim->add_option("--T", sa.T);
    s_sim->add_option("--points", sa.points);

    ConvergeArgs cva;
    auto* s_conv = app.add_subcommand("converge", "convergence-rate study");
    s_conv->add_option("--family", cva.family, "complete, circle or kgroup");
    s_conv->add_option("--p", cva.p);
    s_conv->add_option("--q", cva.q);
    s_conv->add_option("--Ms", cva.Ms, "comma-separated population sizes")->delimiter(',');
    s_conv->add_option("--spec", cva.spec, "hetero spec JSON")->check(CLI::ExistingFile);
    s_conv->add_option("--T", cva.T);
    s_conv->add_option("--points", cva.points);

    HeteroArgs ha;
    auto* s_het = app.add_subcommand("hetero", "heterogeneous versus homogeneous comparison");
    s_het->add_option("--mode", ha.mode, "compare or counterexample");
    s_het->add_option("--p", ha.p, "external rates")->delimiter(',');
    s_het->add_option("--q", ha.q, "internal rates")->delimiter(',');
    s_het->add_option("--a", ha.a, "group shares")->delimiter(',');
    s_het->add_option("--T", ha.T);
    s_het->add_option("--points", ha.points);

    ToyArgs ta;
    auto* s_toy = app.add_subcommand("toy", "embedded toy systems");
    s_toy->add_option("--rule", ta.rule, "unit or geometric");
    s_toy->add_option("--M", ta.M);
    s_toy->add_option("--T", ta.T);
    s_toy->add_option("--points", ta.points);

    BoundArgs ba;
    auto* s_bound = app.add_subcommand("bound", "weighted-norm bound check");
    s_bound->add_option("--system", ba.system, "complete or circle");
    s_bound->add_option("--M", ba.M);
    s_bound->add_option("--p", ba.p);
    s_bound->add_option("--q", ba.q);
    s_bound->add_option("--eps", ba.eps, "absolute weight (overrides --eps-fraction)");
    s_bound->add_option("--eps-fraction", ba.eps_fraction, "weight as a fraction of ln(1 + p/q)");
    s_bound->add_option("--T", ba.T);
    s_bound->add_option("--points", ba.points);

    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        add_common(sub, common);
    }

    std::vector<const char*> argv{"bassnet"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        std::set<std::string> consumed;
        if (name == "simulate" && !common.config.empty()) {
            const json probe = read_json(common.config);
            if (probe.is_object() && probe.contains("family")) {
                consumed = kNetworkKeys;
            }
        }
        merge_config(sub, common, consumed);
        if (common.threads > 0) {
            set_worker_budget(common.threads);
        }
        const fs::path dir(common.out);
        fs::create_directories(dir);

        Run run;
        if (name == "compartmental") {
            run = run_compartmental(ca, common, dir);
        }
        else if (name == "master") {
            run = run_master(ma, common, dir);
        }
        else if (name == "simulate") {
            run = run_simulate(sa, common, dir);
        }
        else if (name == "converge") {
            run = run_converge(cva, common, dir);
        }
        else if (name == "hetero") {
            run = run_hetero(ha, dir);
        }
        else if (name == "toy") {
            run = run_toy(ta, dir);
        }
        else {
            run = run_bound(ba, dir);
        }
        run.resolved["seed"] = common.seed;
        run.resolved["threads"] = worker_budget();
        write_json(dir / "manifest.json", {{"tool", "bassnet"},
                                           {"version", BASSNET_VERSION},
                                           {"subcommand", name},
                                           {"config", run.resolved},
                                           {"artifacts", run.artifacts}});
        out << run.summary << '\n';
        return kExitOk;
    }
    catch (const IntegrationError& e) {
        err << "bassnet " << name << ": numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    catch (const std::exception& e) {
        err << "bassnet " << name << ": " << e.what() << '\n';
        return kExitInvalid;
    }
}

int cli_main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

} // namespace bassnet
