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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bassnet
{

namespace
{

void require(bool cond, const std::string& msg)
{
    if (!cond) {
        throw std::invalid_argument(msg);
    }
}

} // namespace

void validate(const BassParams& params, bool require_positive_p)
{
    require(std::isfinite(params.p) && std::isfinite(params.q), "BassParams: rates must be finite");
    require(params.q >= 0.0, "BassParams: q must be >= 0");
    if (require_positive_p) {
        require(params.p > 0.0, "BassParams: p must be > 0");
    }
    else {
        require(params.p >= 0.0, "BassParams: p must be >= 0");
    }
}

HeteroSpec::HeteroSpec(std::vector<double> a_, std::vector<double> p_, std::vector<std::vector<double>> Q)
    : a(std::move(a_))
    , p(std::move(p_))
{
    Q_flat.reserve(Q.size() * Q.size());
    for (const auto& row : Q) {
        require(row.size() == Q.size(), "HeteroSpec: Q must be square");
        Q_flat.insert(Q_flat.end(), row.begin(), row.end());
    }
}

double HeteroSpec::max_influence(std::size_t k) const
{
    double s = 0.0;
    for (std::size_t m = 0; m < K(); ++m) {
        s += a[m] * Q(m, k);
    }
    return s;
}

double HeteroSpec::min_p() const
{
    return *std::min_element(p.begin(), p.end());
}

void validate(const HeteroSpec& spec)
{
    const std::size_t K = spec.K();
    require(K >= 1, "HeteroSpec: K must be >= 1");
    require(spec.p.size() == K, "HeteroSpec: p has " + std::to_string(spec.p.size()) + " entries, expected " +
                                    std::to_string(K));
    require(spec.Q_flat.size() == K * K, "HeteroSpec: Q must be K x K");
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        require(std::isfinite(spec.a[k]) && spec.a[k] > 0.0, "HeteroSpec: a[" + std::to_string(k) + "] must be > 0");
        require(std::isfinite(spec.p[k]) && spec.p[k] >= 0.0,
                "HeteroSpec: p[" + std::to_string(k) + "] must be >= 0");
        total += spec.a[k];
    }
    require(std::abs(total - 1.0) <= 1e-12, "HeteroSpec: fractions a must sum to 1");
    for (double q : spec.Q_flat) {
        require(std::isfinite(q) && q >= 0.0, "HeteroSpec: Q entries must be >= 0");
    }
}

BassParams homogenize(const HeteroSpec& spec)
{
    validate(spec);
    BassParams out;
    for (std::size_t k = 0; k < spec.K(); ++k) {
        out.p += spec.a[k] * spec.p[k];
        out.q += spec.a[k] * spec.max_influence(k);
    }
    return out;
}

GroupSizes group_sizes(const HeteroSpec& spec, std::size_t M)
{
    validate(spec);
    GroupSizes sizes;
    sizes.M = M;
    sizes.M_k.resize(spec.K());
    std::size_t assigned = 0;
    for (std::size_t k = 0; k + 1 < spec.K(); ++k) {
        sizes.M_k[k] = static_cast<std::size_t>(std::floor(spec.a[k] * static_cast<double>(M)));
        assigned += sizes.M_k[k];
    }
    require(assigned <= M, "group_sizes: population too small");
    sizes.M_k.back() = M - assigned;
    for (std::size_t k = 0; k < spec.K(); ++k) {
        require(sizes.M_k[k] >= 1, "group_sizes: group " + std::to_string(k + 1) + " is empty at M = " +
                                       std::to_string(M));
    }
    return sizes;
}

std::string to_string(Topology topology)
{
    switch (topology) {
    case Topology::explicit_edges:
        return "explicit";
    case Topology::complete:
        return "complete";
    case Topology::circle:
        return "circle";
    case Topology::kgroup:
        return "kgroup";
    }
    return "unknown";
}

NetworkInstance::NetworkInstance(std::vector<double> node_p, std::vector<Edge> edges)
    : node_p_(std::move(node_p))
    , edges_(std::move(edges))
{
    const std::size_t M = node_p_.size();
    require(M >= 1, "NetworkInstance: at least one node required");
    for (double p : node_p_) {
        require(std::isfinite(p) && p >= 0.0, "NetworkInstance: p_j must be >= 0");
    }
    for (const auto& e : edges_) {
        require(e.from < M && e.to < M, "NetworkInstance: edge endpoint out of range");
        require(e.from != e.to, "NetworkInstance: self loops are not allowed");
        require(std::isfinite(e.weight) && e.weight >= 0.0, "NetworkInstance: edge weights must be >= 0");
    }
    group_of_.assign(M, 0);
    build_adjacency();
}

void NetworkInstance::build_adjacency()
{
    const std::size_t M = node_p_.size();
    indegree_.assign(M, 0);
    in_offset_.assign(M + 1, 0);
    out_offset_.assign(M + 1, 0);
    for (const auto& e : edges_) {
        ++indegree_[e.to];
        ++in_offset_[e.to + 1];
        ++out_offset_[e.from + 1];
    }
    std::partial_sum(in_offset_.begin(), in_offset_.end(), in_offset_.begin());
    std::partial_sum(out_offset_.begin(), out_offset_.end(), out_offset_.begin());
    in_edge_.assign(edges_.size(), 0);
    out_edge_.assign(edges_.size(), 0);
    std::vector<std::size_t> in_fill(in_offset_.begin(), in_offset_.end() - 1);
    std::vector<std::size_t> out_fill(out_offset_.begin(), out_offset_.end() - 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        in_edge_[in_fill[edges_[e].to]++] = e;
        out_edge_[out_fill[edges_[e].from]++] = e;
    }
}

bool NetworkInstance::has_external_free_nodes() const
{
    return std::any_of(node_p_.begin(), node_p_.end(), [](double p) { return p <= 0.0; });
}

double NetworkInstance::hazard(std::size_t from, std::size_t to) const
{
    if (from == to) {
        return 0.0;
    }
    if (is_dense()) {
        return group_Q(group_of_[from], group_of_[to]) / static_cast<double>(indegree_[to]);
    }
    double w = 0.0;
    for (std::size_t k = in_offset_[to]; k < in_offset_[to + 1]; ++k) {
        const Edge& e = edges_[in_edge_[k]];
        if (e.from == from) {
            w += e.weight;
        }
    }
    return indegree_[to] > 0 ? w / static_cast<double>(indegree_[to]) : 0.0;
}

void NetworkInstance::for_each_in_edge(std::size_t j, const std::function<void(std::size_t, double)>& fn) const
{
    if (is_dense()) {
        for (std::size_t i = 0; i < size(); ++i) {
            if (i != j) {
                fn(i, group_Q(group_of_[i], group_of_[j]));
            }
        }
        return;
    }
    for (std::size_t k = in_offset_[j]; k < in_offset_[j + 1]; ++k) {
        const Edge& e = edges_[in_edge_[k]];
        fn(e.from, e.weight);
    }
}

void NetworkInstance::for_each_out_edge(std::size_t i, const std::function<void(std::size_t, double)>& fn) const
{
    if (is_dense()) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (i != j) {
                fn(j, group_Q(group_of_[i], group_of_[j]));
            }
        }
        return;
    }
    for (std::size_t k = out_offset_[i]; k < out_offset_[i + 1]; ++k) {
        const Edge& e = edges_[out_edge_[k]];
        fn(e.to, e.weight);
    }
}

std::vector<Edge> NetworkInstance::edges() const
{
    if (!is_dense()) {
        return edges_;
    }
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < size(); ++i) {
        for_each_out_edge(i, [&](std::size_t j, double w) { out.push_back({i, j, w}); });
    }
    return out;
}

std::size_t NetworkInstance::edge_count() const
{
    return is_dense() ? size() * (size() - 1) : edges_.size();
}

double NetworkInstance::max_influence(std::size_t j) const
{
    if (indegree_[j] == 0) {
        return 0.0;
    }
    double s = 0.0;
    for_each_in_edge(j, [&](std::size_t, double w) { s += w; });
    return s / static_cast<double>(indegree_[j]);
}

std::vector<double> NetworkInstance::hazard_matrix() const
{
    const std::size_t M = size();
    std::vector<double> H(M * M, 0.0);
    for (std::size_t j = 0; j < M; ++j) {
        if (indegree_[j] == 0) {
            continue;
        }
        const double inv_d = 1.0 / static_cast<double>(indegree_[j]);
        for_each_in_edge(j, [&](std::size_t i, double w) { H[i * M + j] += w * inv_d; });
    }
    return H;
}

NetworkInstance make_complete(std::size_t M, const BassParams& params)
{
    require(M >= 1, "make_complete: M must be >= 1");
    validate(params);
    NetworkInstance net;
    net.topology_ = Topology::complete;
    net.node_p_.assign(M, params.p);
    net.indegree_.assign(M, M - 1);
    net.group_of_.assign(M, 0);
    net.group_p_ = {params.p};
    net.group_Q_ = {params.q};
    net.group_size_ = {M};
    return net;
}

NetworkInstance make_circle(std::size_t M, const BassParams& params)
{
    require(M >= 3, "make_circle: M must be >= 3 so that both neighbours are distinct");
    validate(params);
    std::vector<Edge> edges;
    edges.reserve(2 * M);
    for (std::size_t j = 0; j < M; ++j) {
        edges.push_back({(j + M - 1) % M, j, params.q});
        edges.push_back({(j + 1) % M, j, params.q});
    }
    NetworkInstance net(std::vector<double>(M, params.p), std::move(edges));
    net.topology_ = Topology::circle;
    return net;
}

std::pair<NetworkInstance, GroupSizes> make_kgroup(const HeteroSpec& spec, std::size_t M)
{
    GroupSizes sizes = group_sizes(spec, M);
    NetworkInstance net;
    net.topology_ = Topology::kgroup;
    net.node_p_.reserve(M);
    net.group_of_.reserve(M);
    for (std::size_t k = 0; k < spec.K(); ++k) {
        for (std::size_t n = 0; n < sizes.M_k[k]; ++n) {
            net.node_p_.push_back(spec.p[k]);
            net.group_of_.push_back(k);
        }
    }
    net.indegree_.assign(M, M - 1);
    net.group_p_ = spec.p;
    net.group_Q_ = spec.Q_flat;
    net.group_size_ = sizes.M_k;
    return {std::move(net), std::move(sizes)};
}

Trajectory::Trajectory(std::vector<double> t)
    : t_(std::move(t))
{
}

void Trajectory::add(std::string name, std::vector<double> values)
{
    require(values.size() == t_.size(), "Trajectory: series '" + name + "' does not match the grid");
    require(!has(name), "Trajectory: duplicate series '" + name + "'");
    series_.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& Trajectory::series(const std::string& name) const
{
    for (const auto& [n, v] : series_) {
        if (n == name) {
            return v;
        }
    }
    throw std::out_of_range("Trajectory: no series '" + name + "'");
}

bool Trajectory::has(const std::string& name) const
{
    return std::any_of(series_.begin(), series_.end(), [&](const auto& s) { return s.first == name; });
}

std::vector<double> uniform_grid(double T, std::size_t points)
{
    require(points >= 2, "uniform_grid: at least two points required");
    require(std::isfinite(T) && T > 0.0, "uniform_grid: T must be > 0");
    std::vector<double> t(points);
    for (std::size_t i = 0; i < points; ++i) {
        t[i] = T * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return t;
}

void validate_grid(std::span<const double> grid)
{
    require(!grid.empty(), "grid must not be empty");
    require(grid.front() == 0.0, "grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        require(grid[i] > grid[i - 1], "grid must be strictly increasing");
    }
}

void to_json(nlohmann::json& j, const BassParams& params)
{
    j = nlohmann::json{{"p", params.p}, {"q", params.q}};
}

void from_json(const nlohmann::json& j, BassParams& params)
{
    params.p = j.at("p").get<double>();
    params.q = j.at("q").get<double>();
    validate(params);
}

void to_json(nlohmann::json& j, const HeteroSpec& spec)
{
    std::vector<std::vector<double>> Q(spec.K(), std::vector<double>(spec.K()));
    for (std::size_t m = 0; m < spec.K(); ++m) {
        for (std::size_t k = 0; k < spec.K(); ++k) {
            Q[m][k] = spec.Q(m, k);
        }
    }
    j = nlohmann::json{{"K", spec.K()}, {"a", spec.a}, {"p", spec.p}, {"Q", Q}};
}

void from_json(const nlohmann::json& j, HeteroSpec& spec)
{
    const auto K = j.at("K").get<std::size_t>();
    spec = HeteroSpec(j.at("a").get<std::vector<double>>(), j.at("p").get<std::vector<double>>(),
                      j.at("Q").get<std::vector<std::vector<double>>>());
    require(spec.K() == K, "HeteroSpec: K does not match the length of a");
    validate(spec);
}

HeteroSpec reference_four_group_spec()
{
    return HeteroSpec({0.4, 0.1, 0.3, 0.2}, {0.0, 0.02, 0.04, 0.01},
                      {{0.1, 0.05, 0.01, 0.0}, {0.05, 0.025, 0.08, 0.05}, {0.01, 0.02, 0.03, 0.04},
                       {0.15, 0.05, 0.05, 0.05}});
}

} // namespace bassnet
