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
#include "bassnet/stochastic.hpp"

#include "bassnet/csv.hpp"
#include "bassnet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

namespace bassnet
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

class Stream
{
public:
    explicit Stream(std::uint64_t seed)
        : gen_(seed)
    {
    }

    // uniform on [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    std::mt19937_64 gen_;
};

AdoptionRecord simulate_dense(const NetworkInstance& net, Stream& rng, AdoptionRecord rec)
{
    const std::size_t M = net.size();
    const std::size_t K = net.group_count();
    std::vector<std::vector<std::size_t>> waiting(K);
    for (std::size_t j = 0; j < M; ++j) {
        waiting[net.group_of(j)].push_back(j);
    }
    std::vector<std::size_t> adopted(K, 0);
    std::vector<double> h(K);
    const double denom = M > 1 ? static_cast<double>(M - 1) : 1.0;
    double t = 0.0;
    for (std::size_t events = 0; events < M; ++events) {
        double total = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            double infl = 0.0;
            for (std::size_t m = 0; m < K; ++m) {
                infl += net.group_Q(m, k) * static_cast<double>(adopted[m]);
            }
            h[k] = net.group_p(k) + infl / denom;
            total += h[k] * static_cast<double>(waiting[k].size());
        }
        if (!(total > 0.0)) {
            break;
        }
        t += rng.exponential(total);
        if (t > rec.T) {
            break;
        }
        double target = rng.uniform() * total;
        std::size_t k = 0;
        for (; k + 1 < K; ++k) {
            const double w = h[k] * static_cast<double>(waiting[k].size());
            if (target < w) {
                break;
            }
            target -= w;
        }
        while (waiting[k].empty()) { // roundoff landed past the last occupied group
            --k;
        }
        auto& pool = waiting[k];
        const std::size_t pick = std::min(pool.size() - 1, static_cast<std::size_t>(target / h[k]));
        rec.times[pool[pick]] = t;
        pool[pick] = pool.back();
        pool.pop_back();
        ++adopted[k];
    }
    return rec;
}

AdoptionRecord simulate_sparse(const NetworkInstance& net, Stream& rng, AdoptionRecord rec)
{
    const std::size_t M = net.size();
    std::vector<double> h(M);
    std::vector<char> done(M, 0);
    for (std::size_t j = 0; j < M; ++j) {
        h[j] = net.p(j);
    }
    double t = 0.0;
    for (std::size_t events = 0; events < M; ++events) {
        double total = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            if (!done[j]) {
                total += h[j];
            }
        }
        if (!(total > 0.0)) {
            break;
        }
        t += rng.exponential(total);
        if (t > rec.T) {
            break;
        }
        double target = rng.uniform() * total;
        std::size_t pick = M;
        for (std::size_t j = 0; j < M; ++j) {
            if (done[j] || h[j] <= 0.0) {
                continue;
            }
            pick = j;
            if (target < h[j]) {
                break;
            }
            target -= h[j];
        }
        done[pick] = 1;
        rec.times[pick] = t;
        net.for_each_out_edge(pick, [&](std::size_t to, double w) { h[to] += w / static_cast<double>(net.indegree(to)); });
    }
    return rec;
}

struct Moments {
    std::vector<std::int64_t> s1;
    std::vector<std::int64_t> s2;
};

void accumulate(const NetworkInstance& net, std::size_t r, std::span<const double> grid, std::uint64_t master_seed,
                Moments& acc, std::vector<double>& sorted)
{
    const AdoptionRecord rec = simulate_once(net, replicate_seed(master_seed, r), grid.back());
    sorted = rec.times;
    std::sort(sorted.begin(), sorted.end());
    std::size_t n = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        while (n < sorted.size() && sorted[n] <= grid[i]) {
            ++n;
        }
        const auto N = static_cast<std::int64_t>(n);
        acc.s1[i] += N;
        acc.s2[i] += N * N;
    }
}

McSummary summarize(const Moments& acc, std::size_t M, std::size_t R, std::span<const double> grid,
                    std::uint64_t master_seed)
{
    McSummary mc;
    mc.t.assign(grid.begin(), grid.end());
    mc.R = R;
    mc.master_seed = master_seed;
    mc.f_mean.resize(grid.size());
    mc.f_se.resize(grid.size());
    const double Md = static_cast<double>(M);
    const double Rd = static_cast<double>(R);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        mc.f_mean[i] = static_cast<double>(acc.s1[i]) / (Rd * Md);
        if (R < 2) {
            mc.f_se[i] = 0.0;
            continue;
        }
        // R * sum N^2 - (sum N)^2 is exact in 128-bit arithmetic
        const __int128 s1 = acc.s1[i];
        const __int128 num = static_cast<__int128>(R) * acc.s2[i] - s1 * s1;
        const double var = static_cast<double>(num) / (Rd * (Rd - 1.0)) / (Md * Md);
        mc.f_se[i] = std::sqrt(std::max(var, 0.0) / Rd);
    }
    return mc;
}

void check_mc_inputs(const NetworkInstance& net, std::size_t R, std::span<const double> grid)
{
    if (R < 1) {
        throw std::invalid_argument("monte_carlo: R must be >= 1");
    }
    if (net.size() == 0) {
        throw std::invalid_argument("monte_carlo: empty network");
    }
    validate_grid(grid);
    if (!(grid.back() > 0.0)) {
        throw std::invalid_argument("monte_carlo: horizon must be positive");
    }
}

} // namespace

std::size_t AdoptionRecord::adopters_at(double t) const
{
    return static_cast<std::size_t>(std::count_if(times.begin(), times.end(), [t](double s) { return s <= t; }));
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t r)
{
    std::uint64_t z = master_seed + (r + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

AdoptionRecord simulate_once(const NetworkInstance& net, std::uint64_t seed, double T)
{
    if (!(T > 0.0)) {
        throw std::invalid_argument("simulate_once: T must be positive");
    }
    AdoptionRecord rec;
    rec.times.assign(net.size(), kInf);
    rec.seed = seed;
    rec.T = T;
    Stream rng(seed);
    if (net.is_dense()) {
        return simulate_dense(net, rng, std::move(rec));
    }
    return simulate_sparse(net, rng, std::move(rec));
}

McSummary monte_carlo_serial(const NetworkInstance& net, std::size_t R, std::span<const double> grid,
                             std::uint64_t master_seed)
{
    check_mc_inputs(net, R, grid);
    Moments acc{std::vector<std::int64_t>(grid.size(), 0), std::vector<std::int64_t>(grid.size(), 0)};
    std::vector<double> sorted;
    for (std::size_t r = 0; r < R; ++r) {
        accumulate(net, r, grid, master_seed, acc, sorted);
    }
    return summarize(acc, net.size(), R, grid, master_seed);
}

McSummary monte_carlo(const NetworkInstance& net, std::size_t R, std::span<const double> grid,
                      std::uint64_t master_seed)
{
    check_mc_inputs(net, R, grid);
    const std::size_t chunks = std::min<std::size_t>(R, 256);
    std::vector<Moments> partial(chunks, Moments{std::vector<std::int64_t>(grid.size(), 0),
                                                 std::vector<std::int64_t>(grid.size(), 0)});
    parallel_for(chunks, [&](std::size_t c) {
        std::vector<double> sorted;
        for (std::size_t r = c * R / chunks; r < (c + 1) * R / chunks; ++r) {
            accumulate(net, r, grid, master_seed, partial[c], sorted);
        }
    });
    Moments acc{std::vector<std::int64_t>(grid.size(), 0), std::vector<std::int64_t>(grid.size(), 0)};
    for (const auto& part : partial) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            acc.s1[i] += part.s1[i];
            acc.s2[i] += part.s2[i];
        }
    }
    return summarize(acc, net.size(), R, grid, master_seed);
}

Trajectory McSummary::to_trajectory() const
{
    Trajectory tr(t);
    tr.add("f_mean", f_mean);
    tr.add("f_se", f_se);
    return tr;
}

void write_mc_summary(const McSummary& mc, const std::filesystem::path& csv_path,
                      const std::filesystem::path& json_path)
{
    write_csv(csv_path, mc.to_trajectory());
    nlohmann::json meta{{"R", mc.R}, {"master_seed", mc.master_seed}, {"points", mc.t.size()},
                        {"seed_rule", "splitmix64(master_seed + (r + 1) * 0x9E3779B97F4A7C15)"}};
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + json_path.string() + " for writing");
    }
    out << meta.dump(2) << '\n';
}

} // namespace bassnet
