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
#include "bassnet/master_kernels.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace bassnet::kernels
{

namespace
{

constexpr std::size_t kMaxSubsetNodes = 20;

inline double subset_row(std::size_t A, std::span<const double> u, const std::vector<double>& decay,
                         const std::vector<std::size_t>& offset, const std::vector<std::uint32_t>& target,
                         const std::vector<double>& coeff)
{
    double acc = -decay[A] * u[A];
    for (std::size_t e = offset[A]; e < offset[A + 1]; ++e) {
        acc += coeff[e] * u[target[e]];
    }
    return acc;
}

} // namespace

SubsetOperator::SubsetOperator(const NetworkInstance& net)
    : nodes_(net.size())
{
    const std::size_t M = nodes_;
    if (M > kMaxSubsetNodes) {
        throw std::invalid_argument("SubsetOperator: at most " + std::to_string(kMaxSubsetNodes) + " nodes");
    }
    const std::vector<double> H = net.hazard_matrix();
    const std::size_t n_states = std::size_t{1} << M;
    decay_.assign(n_states, 0.0);
    offset_.assign(n_states + 1, 0);
    target_.reserve(n_states * M / 2);
    coeff_.reserve(n_states * M / 2);
    for (std::size_t A = 0; A < n_states; ++A) {
        offset_[A] = target_.size();
        if (A == 0) {
            continue;
        }
        double decay = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            if (A & (std::size_t{1} << i)) {
                decay += net.p(i);
            }
        }
        for (std::size_t j = 0; j < M; ++j) {
            if (A & (std::size_t{1} << j)) {
                continue;
            }
            double r = 0.0;
            for (std::size_t i = 0; i < M; ++i) {
                if (A & (std::size_t{1} << i)) {
                    r += H[j * M + i];
                }
            }
            if (r != 0.0) {
                decay += r;
                target_.push_back(static_cast<std::uint32_t>(A | (std::size_t{1} << j)));
                coeff_.push_back(r);
            }
        }
        decay_[A] = decay;
    }
    offset_[n_states] = target_.size();
}

void SubsetOperator::apply_serial(std::span<const double> u, std::span<double> du) const
{
    for (std::size_t A = 0; A < states(); ++A) {
        du[A] = subset_row(A, u, decay_, offset_, target_, coeff_);
    }
}

void SubsetOperator::apply(std::span<const double> u, std::span<double> du) const
{
    const long n = static_cast<long>(states());
#pragma omp parallel for schedule(static) if (n > 4096)
    for (long A = 0; A < n; ++A) {
        du[A] = subset_row(static_cast<std::size_t>(A), u, decay_, offset_, target_, coeff_);
    }
}

std::size_t CompositionLayout::count(std::span<const std::size_t> limits)
{
    std::size_t n = 1;
    for (std::size_t l : limits) {
        if (l + 1 == 0 || n > std::numeric_limits<std::size_t>::max() / (l + 1)) {
            return std::numeric_limits<std::size_t>::max();
        }
        n *= l + 1;
    }
    return n;
}

CompositionLayout::CompositionLayout(std::vector<std::size_t> limits)
    : limits_(std::move(limits))
{
    size_ = count(limits_);
    if (size_ == std::numeric_limits<std::size_t>::max()) {
        throw std::invalid_argument("CompositionLayout: state count overflows");
    }
    stride_.assign(limits_.size(), 1);
    for (std::size_t j = limits_.size(); j-- > 1;) {
        stride_[j - 1] = stride_[j] * (limits_[j] + 1);
    }
}

std::size_t CompositionLayout::index(std::span<const std::size_t> k) const
{
    std::size_t idx = 0;
    for (std::size_t j = 0; j < K(); ++j) {
        if (k[j] > limits_[j]) {
            throw std::out_of_range("CompositionLayout: component exceeds its limit");
        }
        idx += k[j] * stride_[j];
    }
    return idx;
}

std::vector<std::size_t> CompositionLayout::decode(std::size_t idx) const
{
    std::vector<std::size_t> k(K());
    for (std::size_t j = 0; j < K(); ++j) {
        k[j] = idx / stride_[j];
        idx %= stride_[j];
    }
    return k;
}

CompositionOperator::CompositionOperator(const HeteroSpec& spec, const GroupSizes& sizes)
{
    validate(spec);
    if (sizes.M_k.size() != spec.K()) {
        throw std::invalid_argument("CompositionOperator: group sizes do not match the spec");
    }
    layout_ = CompositionLayout(sizes.M_k);
    std::vector<double> num(spec.K());
    for (std::size_t m = 0; m < spec.K(); ++m) {
        num[m] = static_cast<double>(sizes.M_k[m]);
    }
    build(spec, num, sizes.M > 1 ? static_cast<double>(sizes.M - 1) : 0.0, true, sizes.M);
}

CompositionOperator::CompositionOperator(const HeteroSpec& spec, std::size_t n_max)
{
    validate(spec);
    if (n_max < 1) {
        throw std::invalid_argument("CompositionOperator: truncation level must be >= 1");
    }
    layout_ = CompositionLayout(std::vector<std::size_t>(spec.K(), n_max));
    build(spec, spec.a, 1.0, false, n_max);
}

void CompositionOperator::build(const HeteroSpec& spec, const std::vector<double>& weight_num, double weight_den,
                                bool finite, std::size_t n_max)
{
    const std::size_t K = spec.K();
    const std::size_t N = layout_.size();
    decay_.assign(N, 0.0);
    gain_.assign(N * K, 0.0);
    active_.assign(N, 0);
    n_of_.assign(N, 0);
    std::vector<std::size_t> k(K, 0);
    std::vector<double> Qk(K);
    for (std::size_t idx = 0; idx < N; ++idx) {
        std::size_t n = 0;
        for (std::size_t j = 0; j < K; ++j) {
            n += k[j];
        }
        n_of_[idx] = n;
        if (n >= 1 && n <= n_max) {
            active_[idx] = 1;
            double decay = 0.0;
            for (std::size_t j = 0; j < K; ++j) {
                decay += static_cast<double>(k[j]) * spec.p[j];
            }
            for (std::size_t m = 0; m < K; ++m) {
                double s = 0.0;
                for (std::size_t j = 0; j < K; ++j) {
                    s += spec.Q(m, j) * static_cast<double>(k[j]);
                }
                Qk[m] = s;
            }
            for (std::size_t m = 0; m < K; ++m) {
                double w;
                if (finite) {
                    w = weight_den > 0.0 ? (weight_num[m] - static_cast<double>(k[m])) / weight_den : 0.0;
                }
                else {
                    w = weight_num[m];
                }
                const double g = w * Qk[m];
                decay += g;
                if (g == 0.0) {
                    continue;
                }
                if (finite || n + 1 <= n_max) {
                    gain_[idx * K + m] = g;
                }
                else {
                    boundary_.push_back({idx, m, g});
                }
            }
            decay_[idx] = decay;
        }
        // advance the mixed-radix counter, last coordinate fastest
        for (std::size_t j = K; j-- > 0;) {
            if (++k[j] <= layout_.limit(j)) {
                break;
            }
            k[j] = 0;
        }
    }
}

void CompositionOperator::apply_serial(std::span<const double> u, std::span<double> du) const
{
    const std::size_t K = layout_.K();
    for (std::size_t idx = 0; idx < states(); ++idx) {
        if (!active_[idx]) {
            du[idx] = 0.0;
            continue;
        }
        double acc = -decay_[idx] * u[idx];
        const double* g = &gain_[idx * K];
        for (std::size_t m = 0; m < K; ++m) {
            if (g[m] != 0.0) {
                acc += g[m] * u[idx + layout_.stride(m)];
            }
        }
        du[idx] = acc;
    }
}

void CompositionOperator::apply(std::span<const double> u, std::span<double> du) const
{
    const std::size_t K = layout_.K();
    const long n = static_cast<long>(states());
    const std::size_t* st = layout_.strides().data();
    const double* gain = gain_.data();
    const double* decay = decay_.data();
    const std::uint8_t* act = active_.data();
    const double* uu = u.data();
    double* out = du.data();
#pragma omp parallel for schedule(static) if (n > 8192)
    for (long i = 0; i < n; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        if (!act[idx]) {
            out[idx] = 0.0;
            continue;
        }
        double acc = -decay[idx] * uu[idx];
        const double* g = gain + idx * K;
        for (std::size_t m = 0; m < K; ++m) {
            if (g[m] != 0.0) {
                acc += g[m] * uu[idx + st[m]];
            }
        }
        out[idx] = acc;
    }
}

} // namespace bassnet::kernels
