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
#ifndef BASSNET_STOCHASTIC_HPP
#define BASSNET_STOCHASTIC_HPP

#include "bassnet/model.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace bassnet
{

/// Adoption times of one replicate; +inf for nodes that have not adopted by T.
struct AdoptionRecord {
    std::vector<double> times;
    std::uint64_t seed = 0;
    double T = 0.0;

    /// Number of adopters at time t (t <= T).
    std::size_t adopters_at(double t) const;
};

/**
 * Exact event-driven simulation. Nonadopter j has hazard p_j + sum_{adopters i} hazard(i, j);
 * the next adoption is exponential with the total rate and picks j proportionally to its hazard.
 * Dense networks use group counts; explicit networks update hazards along out-edges.
 */
AdoptionRecord simulate_once(const NetworkInstance& net, std::uint64_t seed, double T);

/**
 * Seed of replicate r: splitmix64 finalizer applied to masterSeed + (r + 1) * 0x9E3779B97F4A7C15.
 * Each replicate drives its own std::mt19937_64.
 */
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t r);

struct McSummary {
    std::vector<double> t;
    std::vector<double> f_mean;
    std::vector<double> f_se;
    std::size_t R = 0;
    std::uint64_t master_seed = 0;

    Trajectory to_trajectory() const;
};

/// Parallel over replicates. Sums of N and N^2 are accumulated in integers, so the result
/// does not depend on scheduling.
McSummary monte_carlo(const NetworkInstance& net, std::size_t R, std::span<const double> grid,
                      std::uint64_t master_seed);

/// Single-threaded reference of monte_carlo; results are bitwise identical.
McSummary monte_carlo_serial(const NetworkInstance& net, std::size_t R, std::span<const double> grid,
                             std::uint64_t master_seed);

/// Writes t,f_mean,f_se to csv_path and {"R", "master_seed", ...} to the sidecar JSON.
void write_mc_summary(const McSummary& mc, const std::filesystem::path& csv_path,
                      const std::filesystem::path& json_path);

} // namespace bassnet

#endif // BASSNET_STOCHASTIC_HPP
