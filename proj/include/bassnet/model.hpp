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
#ifndef BASSNET_MODEL_HPP
#define BASSNET_MODEL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bassnet
{

/// Rates of a homogeneous Bass model: external rate p, maximal internal rate q (both 1/time).
struct BassParams {
    double p = 0.0;
    double q = 0.0;

    friend bool operator==(const BassParams&, const BassParams&) = default;
};

/// Throws std::invalid_argument unless p, q are finite, q >= 0 and p >= 0
/// (p > 0 when require_positive_p is set).
void validate(const BassParams& params, bool require_positive_p = false);

/**
 * K homogeneous groups.
 *
 * a[k] is the population fraction of group k, p[k] its external rate and
 * Q(m, k) the influence of a group-m adopter on a group-k nonadopter.
 */
struct HeteroSpec {
    std::vector<double> a;
    std::vector<double> p;
    std::vector<double> Q_flat; // row-major K x K

    HeteroSpec() = default;
    HeteroSpec(std::vector<double> a_, std::vector<double> p_, std::vector<std::vector<double>> Q);

    std::size_t K() const { return a.size(); }
    double Q(std::size_t m, std::size_t k) const { return Q_flat[m * K() + k]; }
    double& Q(std::size_t m, std::size_t k) { return Q_flat[m * K() + k]; }

    /// Maximal influence on a group-k nonadopter in the compartmental limit: sum_m a_m Q(m, k).
    double max_influence(std::size_t k) const;
    double min_p() const;
};

void validate(const HeteroSpec& spec);

/// Averaged homogeneous rates: p = sum_k a_k p_k, q = sum_k a_k sum_m a_m Q(m, k).
BassParams homogenize(const HeteroSpec& spec);

/// Group sizes of a finite population. M_k = floor(a_k M) for k < K, remainder to the last group.
struct GroupSizes {
    std::size_t M = 0;
    std::vector<std::size_t> M_k;
};

GroupSizes group_sizes(const HeteroSpec& spec, std::size_t M);

enum class Topology { explicit_edges, complete, circle, kgroup };

std::string to_string(Topology topology);

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    double weight = 0.0;
};

/**
 * Weighted directed network of the discrete model.
 *
 * The hazard contributed by adopter i to nonadopter j is weight(i, j) / indegree(j).
 * Complete and K-group instances are dense: they keep group-level rates only and
 * materialize edges on request.
 */
class NetworkInstance
{
public:
    /// Explicit network. Indegrees are the number of listed in-edges of each node.
    NetworkInstance(std::vector<double> node_p, std::vector<Edge> edges);

    std::size_t size() const { return node_p_.size(); }
    Topology topology() const { return topology_; }
    bool is_dense() const { return topology_ == Topology::complete || topology_ == Topology::kgroup; }

    double p(std::size_t j) const { return node_p_[j]; }
    std::span<const double> node_p() const { return node_p_; }
    std::size_t indegree(std::size_t j) const { return indegree_[j]; }
    std::size_t group_of(std::size_t j) const { return group_of_[j]; }
    std::span<const std::size_t> groups() const { return group_of_; }

    bool has_external_free_nodes() const;

    /// Dense-tag data. Group rates, influence matrix and sizes; empty for sparse topologies.
    std::size_t group_count() const { return group_p_.size(); }
    double group_p(std::size_t k) const { return group_p_[k]; }
    double group_Q(std::size_t m, std::size_t k) const { return group_Q_[m * group_count() + k]; }
    std::size_t group_size(std::size_t k) const { return group_size_[k]; }

    /// Per-edge hazard weight(i, j) / indegree(j); zero when there is no edge i -> j.
    double hazard(std::size_t from, std::size_t to) const;

    /// Calls fn(from, weight) for every in-edge of node j.
    void for_each_in_edge(std::size_t j, const std::function<void(std::size_t, double)>& fn) const;
    void for_each_out_edge(std::size_t i, const std::function<void(std::size_t, double)>& fn) const;

    std::vector<Edge> edges() const;
    std::size_t edge_count() const;

    /// Sum of in-edge hazards of node j: the maximal internal influence it can receive.
    double max_influence(std::size_t j) const;

    /// Dense M x M matrix of per-edge hazards, row = influencer, column = receiver.
    std::vector<double> hazard_matrix() const;

private:
    NetworkInstance() = default;

    friend NetworkInstance make_complete(std::size_t M, const BassParams& params);
    friend NetworkInstance make_circle(std::size_t M, const BassParams& params);
    friend std::pair<NetworkInstance, GroupSizes> make_kgroup(const HeteroSpec& spec, std::size_t M);

    void build_adjacency();

    Topology topology_ = Topology::explicit_edges;
    std::vector<double> node_p_;
    std::vector<std::size_t> indegree_;
    std::vector<std::size_t> group_of_;

    // sparse storage, CSR by receiver and by influencer
    std::vector<Edge> edges_;
    std::vector<std::size_t> in_offset_, in_edge_;
    std::vector<std::size_t> out_offset_, out_edge_;

    // dense tag
    std::vector<double> group_p_;
    std::vector<double> group_Q_;
    std::vector<std::size_t> group_size_;
};

NetworkInstance make_complete(std::size_t M, const BassParams& params);
NetworkInstance make_circle(std::size_t M, const BassParams& params);
std::pair<NetworkInstance, GroupSizes> make_kgroup(const HeteroSpec& spec, std::size_t M);

/// Time grid with named series of equal length.
class Trajectory
{
public:
    Trajectory() = default;
    explicit Trajectory(std::vector<double> t);

    const std::vector<double>& t() const { return t_; }
    std::size_t size() const { return t_.size(); }

    void add(std::string name, std::vector<double> values);
    const std::vector<double>& series(const std::string& name) const;
    bool has(const std::string& name) const;
    const std::vector<std::pair<std::string, std::vector<double>>>& all() const { return series_; }

private:
    std::vector<double> t_;
    std::vector<std::pair<std::string, std::vector<double>>> series_;
};

/// Uniform grid of `points` values on [0, T].
std::vector<double> uniform_grid(double T, std::size_t points);

/// Throws std::invalid_argument unless the grid starts at 0 and is strictly increasing.
void validate_grid(std::span<const double> grid);

void to_json(nlohmann::json& j, const BassParams& params);
void from_json(const nlohmann::json& j, BassParams& params);
void to_json(nlohmann::json& j, const HeteroSpec& spec);
void from_json(const nlohmann::json& j, HeteroSpec& spec);

/// Four-group population with an external-free first group, a = (0.4, 0.1, 0.3, 0.2).
/// Used by the K-group convergence study and its tests.
HeteroSpec reference_four_group_spec();

} // namespace bassnet

#endif // BASSNET_MODEL_HPP
