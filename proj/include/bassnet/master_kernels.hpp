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
#ifndef BASSNET_MASTER_KERNELS_HPP
#define BASSNET_MASTER_KERNELS_HPP

// Linear operators of the master-equation systems. Every operator has a serial
// reference `apply_serial` and an OpenMP `apply`; both must agree bitwise.

#include "bassnet/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bassnet::kernels
{

/**
 * Full subset system of an explicit network.
 *
 * State index = bitmask of the nonadopter subset A (bit i set iff node i is in A).
 * Index 0 is the empty set and stays at 1. Row A holds
 *   d[S_A]/dt = -(sum_{i in A} p_i + sum_{j not in A} r_j(A)) [S_A] + sum_{j not in A} r_j(A) [S_{A+j}],
 * where r_j(A) = sum_{i in A} hazard(j, i).
 */
class SubsetOperator
{
public:
    explicit SubsetOperator(const NetworkInstance& net);

    std::size_t nodes() const { return nodes_; }
    std::size_t states() const { return decay_.size(); }

    void apply_serial(std::span<const double> u, std::span<double> du) const;
    void apply(std::span<const double> u, std::span<double> du) const;

private:
    std::size_t nodes_ = 0;
    std::vector<double> decay_;
    std::vector<std::size_t> offset_;
    std::vector<std::uint32_t> target_;
    std::vector<double> coeff_;
};

/// Mixed-radix enumeration of composition vectors k with 0 <= k_j <= limit_j; the last coordinate varies fastest.
class CompositionLayout
{
public:
    CompositionLayout() = default;
    explicit CompositionLayout(std::vector<std::size_t> limits);

    std::size_t K() const { return limits_.size(); }
    std::size_t size() const { return size_; }
    std::size_t limit(std::size_t j) const { return limits_[j]; }
    std::size_t stride(std::size_t j) const { return stride_[j]; }
    std::span<const std::size_t> strides() const { return stride_; }

    std::size_t index(std::span<const std::size_t> k) const;
    std::vector<std::size_t> decode(std::size_t idx) const;
    std::size_t unit_index(std::size_t j) const { return stride_[j]; }

    /// Number of states with prod (limit_j + 1) entries, or SIZE_MAX on overflow.
    static std::size_t count(std::span<const std::size_t> limits);

private:
    std::vector<std::size_t> limits_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 0;
};

/**
 * Composition-vector system of the K-group complete network,
 *   du_k/dt = -(k.p + w(k)^T Q k) u_k + sum_m w_m(k) (Q k)_m u_{k+e_m},
 * with weights w_m(k) = (M_m - k_m)/(M - 1) for the finite system and w_m = a_m for the
 * limit system. The empty composition is held at u = 1.
 *
 * For the limit system the layout is truncated at n(k) <= n_max; neighbours above the
 * truncation are supplied by a closure callback at evaluation time.
 */
class CompositionOperator
{
public:
    /// Finite population with group sizes M_k.
    CompositionOperator(const HeteroSpec& spec, const GroupSizes& sizes);

    /// Limit weights a_m on the box 0 <= k_j <= n_max, restricted to n(k) <= n_max.
    CompositionOperator(const HeteroSpec& spec, std::size_t n_max);

    const CompositionLayout& layout() const { return layout_; }
    std::size_t states() const { return layout_.size(); }
    bool active(std::size_t idx) const { return active_[idx] != 0; }
    std::size_t total(std::size_t idx) const { return n_of_[idx]; }

    void apply_serial(std::span<const double> u, std::span<double> du) const;
    void apply(std::span<const double> u, std::span<double> du) const;

    /// Closure contributions for neighbours outside the truncation: gain coefficient and target composition.
    struct BoundaryTerm {
        std::size_t row = 0;
        std::size_t group = 0;
        double coeff = 0.0;
    };
    const std::vector<BoundaryTerm>& boundary() const { return boundary_; }

private:
    void build(const HeteroSpec& spec, const std::vector<double>& weight_num, double weight_den, bool finite,
               std::size_t n_max);

    CompositionLayout layout_;
    std::vector<double> decay_;
    std::vector<double> gain_; // states x K
    std::vector<std::uint8_t> active_;
    std::vector<std::size_t> n_of_;
    std::vector<BoundaryTerm> boundary_;
};

} // namespace bassnet::kernels

#endif // BASSNET_MASTER_KERNELS_HPP
