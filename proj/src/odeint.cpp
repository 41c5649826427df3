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
#include "bassnet/odeint.hpp"

#include "bassnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bassnet
{

namespace
{

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Loops over large states are shared across the worker team; small ones stay serial.
constexpr std::size_t kParallelThreshold = 1 << 15;

class Stepper
{
public:
    Stepper(const VectorField& rhs, std::size_t n, IntegrationStats& stats)
        : rhs_(rhs)
        , n_(n)
        , stats_(stats)
    {
        for (auto* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &ytmp, &ynew}) {
            v->assign(n, 0.0);
        }
    }

    void eval(double t, const std::vector<double>& y, std::vector<double>& dy)
    {
        rhs_(t, y, dy);
        ++stats_.rhs_calls;
    }

    // One trial step from (t, y) with step h; k1 must hold f(t, y). Returns the scaled error norm.
    double attempt(double t, const std::vector<double>& y, double h, double rtol, double atol)
    {
        const long n = static_cast<long>(n_);
        const bool par = n_ >= kParallelThreshold;
#pragma omp parallel for if (par) schedule(static)
        for (long i = 0; i < n; ++i) {
            ytmp[i] = y[i] + h * a21 * k1[i];
        }
        eval(t + c2 * h, ytmp, k2);
#pragma omp parallel for if (par) schedule(static)
        for (long i = 0; i < n; ++i) {
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        }
        eval(t + c3 * h, ytmp, k3);
#pragma omp parallel for if (par) schedule(static)
        for (long i = 0; i < n; ++i) {
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        }
        eval(t + c4 * h, ytmp, k4);
#pragma omp parallel for if (par) schedule(static)
        for (long i = 0; i < n; ++i) {
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        }
        eval(t + c5 * h, ytmp, k5);
#pragma omp parallel for if (par) schedule(static)
        for (long i = 0; i < n; ++i) {
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        }
        eval(t + h, ytmp, k6);
#pragma omp parallel for if (par) schedule(static)
        for (long i = 0; i < n; ++i) {
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        }
        eval(t + h, ynew, k7);

        double sum = 0.0;
        bool finite = true;
#pragma omp parallel for if (par) schedule(static) reduction(+ : sum) reduction(&& : finite)
        for (long i = 0; i < n; ++i) {
            const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = err / sc;
            sum += r * r;
            finite = finite && std::isfinite(ynew[i]) && std::isfinite(k7[i]);
        }
        if (!finite) {
            return std::numeric_limits<double>::infinity();
        }
        return std::sqrt(sum / static_cast<double>(std::max<std::size_t>(n_, 1)));
    }

    // Dense output on [t, t + h] after an accepted step.
    void interpolate(const std::vector<double>& y, double h, double theta, std::vector<double>& out) const
    {
        const double theta1 = 1.0 - theta;
        const long n = static_cast<long>(n_);
#pragma omp parallel for if (n_ >= kParallelThreshold) schedule(static)
        for (long i = 0; i < n; ++i) {
            const double r2 = ynew[i] - y[i];
            const double r3 = h * k1[i] - r2;
            const double r4 = r2 - h * k7[i] - r3;
            const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            out[i] = y[i] + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
        }
    }

    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

private:
    const VectorField& rhs_;
    std::size_t n_;
    IntegrationStats& stats_;
};

double rms_scaled(std::span<const double> v, std::span<const double> y, double rtol, double atol)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = v[i] / (atol + rtol * std::abs(y[i]));
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(std::max<std::size_t>(v.size(), 1)));
}

} // namespace

void validate(const IntegratorConfig& cfg)
{
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw std::invalid_argument("IntegratorConfig: tolerances must be > 0");
    }
    if (cfg.max_steps == 0) {
        throw std::invalid_argument("IntegratorConfig: max_steps must be > 0");
    }
}

IntegrationStats integrate(const VectorField& rhs, std::span<const double> y0, std::span<const double> grid,
                           const IntegratorConfig& cfg, const GridObserver& observer)
{
    validate(cfg);
    validate_grid(grid);
    IntegrationStats stats;
    const std::size_t n = y0.size();
    std::vector<double> y(y0.begin(), y0.end());
    observer(0, grid[0], y);
    if (grid.size() == 1 || n == 0) {
        for (std::size_t i = 1; i < grid.size(); ++i) {
            observer(i, grid[i], y);
        }
        return stats;
    }

    Stepper st(rhs, n, stats);
    const double rtol = cfg.rel_tol;
    const double atol = cfg.abs_tol;
    const double t_end = grid.back();
    double t = 0.0;
    st.eval(t, y, st.k1);
    for (double v : st.k1) {
        if (!std::isfinite(v)) {
            throw IntegrationError("integrate: non-finite derivative at t = 0");
        }
    }

    // Initial step guess (Hairer, Norsett & Wanner, II.4).
    double h;
    {
        const double d0 = rms_scaled(y, y, rtol, atol);
        const double d1n = rms_scaled(st.k1, y, rtol, atol);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, t_end);
        for (std::size_t i = 0; i < n; ++i) {
            st.ytmp[i] = y[i] + h0 * st.k1[i];
        }
        st.eval(t + h0, st.ytmp, st.k2);
        for (std::size_t i = 0; i < n; ++i) {
            st.k3[i] = (st.k2[i] - st.k1[i]) / h0;
        }
        const double d2 = rms_scaled(st.k3, y, rtol, atol);
        const double dm = std::max(d1n, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
        h = std::min(100.0 * h0, h1);
        h = std::min(h, t_end);
    }

    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0, beta = 0.04;
    constexpr double expo = 0.2 - beta * 0.75;
    double err_old = 1e-4;
    bool last_rejected = false;
    std::size_t next = 1;
    std::vector<double> dense(n);
    std::size_t steps = 0;

    while (next < grid.size()) {
        if (steps++ >= cfg.max_steps) {
            throw IntegrationError("integrate: step budget of " + std::to_string(cfg.max_steps) +
                                   " exhausted at t = " + std::to_string(t));
        }
        if (t + h > t_end) {
            h = t_end - t;
        }
        const double err = st.attempt(t, y, h, rtol, atol);
        if (!std::isfinite(err)) {
            ++stats.rejected;
            h *= 0.25;
            if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                throw IntegrationError("integrate: non-finite derivative near t = " + std::to_string(t));
            }
            last_rejected = true;
            continue;
        }
        if (err <= 1.0) {
            ++stats.accepted;
            const double t_new = (h == t_end - t) ? t_end : t + h;
            while (next < grid.size() && grid[next] <= t_new) {
                if (grid[next] == t_new) {
                    observer(next, grid[next], st.ynew);
                }
                else {
                    st.interpolate(y, h, (grid[next] - t) / h, dense);
                    observer(next, grid[next], dense);
                }
                ++next;
            }
            std::swap(y, st.ynew);
            std::swap(st.k1, st.k7); // FSAL
            t = t_new;
            double fac = err == 0.0 ? fac_max
                                    : safety * std::pow(err, -expo) * std::pow(std::max(err_old, 1e-4), beta);
            fac = std::clamp(fac, fac_min, fac_max);
            if (last_rejected) {
                fac = std::min(fac, 1.0);
            }
            err_old = err;
            last_rejected = false;
            h *= fac;
        }
        else {
            ++stats.rejected;
            const double fac = std::max(fac_min, safety * std::pow(err, -0.2));
            h *= fac;
            last_rejected = true;
            if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                throw IntegrationError("integrate: step size underflow at t = " + std::to_string(t));
            }
        }
    }
    return stats;
}

std::vector<double> StateHistory::component(std::size_t i) const
{
    std::vector<double> out(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        out[k] = states[k].at(i);
    }
    return out;
}

StateHistory integrate(const VectorField& rhs, std::span<const double> y0, std::span<const double> grid,
                       const IntegratorConfig& cfg)
{
    StateHistory out;
    out.t.assign(grid.begin(), grid.end());
    out.states.resize(grid.size());
    out.stats = integrate(rhs, y0, grid, cfg, [&](std::size_t i, double, std::span<const double> y) {
        out.states[i].assign(y.begin(), y.end());
    });
    return out;
}

double sup_diff(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("sup_diff: series lengths differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double signed_sup_diff(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("signed_sup_diff: series lengths differ or are empty");
    }
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, a[i] - b[i]);
    }
    return m;
}

std::string to_string(FitModel model)
{
    return model == FitModel::log_log ? "log-log" : "semi-log";
}

FitResult fit_line(std::span<const double> x, std::span<const double> y, FitModel model)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_line: x and y lengths differ");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("fit_line: at least two points required");
    }
    const std::size_t n = x.size();
    std::vector<double> X(n), Y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(y[i] > 0.0)) {
            throw std::invalid_argument("fit_line: y must be > 0 under a log transform");
        }
        if (model == FitModel::log_log && !(x[i] > 0.0)) {
            throw std::invalid_argument("fit_line: x must be > 0 for a log-log fit");
        }
        X[i] = model == FitModel::log_log ? std::log(x[i]) : x[i];
        Y[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += X[i];
        my += Y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (X[i] - mx) * (X[i] - mx);
        sxy += (X[i] - mx) * (Y[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_line: x values are all equal");
    }
    FitResult fit;
    fit.model = model;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = Y[i] - (fit.intercept + fit.slope * X[i]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

EpsNormParams::EpsNormParams(double p_, double q_)
    : p(p_)
    , q(q_)
{
    if (!(p > 0.0) || !(q > 0.0)) {
        throw std::invalid_argument("EpsNormParams: p and q must be > 0");
    }
}

double EpsNormParams::eps_tilde() const
{
    return std::log1p(p / q);
}

double EpsNormParams::theta(double eps) const
{
    return q * std::exp(eps) / (p + q);
}

double eps_norm(std::span<const double> v, double eps, std::size_t first_index)
{
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("eps_norm: eps must be >= 0");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double n = static_cast<double>(first_index + i);
        m = std::max(m, std::exp(-eps * n) * std::abs(v[i]));
    }
    return m;
}

double eps_norm(std::span<const double> v, std::span<const std::size_t> n_of_index, double eps)
{
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("eps_norm: eps must be >= 0");
    }
    if (v.size() != n_of_index.size()) {
        throw std::invalid_argument("eps_norm: index weights do not match the values");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        m = std::max(m, std::exp(-eps * static_cast<double>(n_of_index[i])) * std::abs(v[i]));
    }
    return m;
}

double eps_norm_over_time(const std::vector<std::vector<double>>& snapshots, double eps, std::size_t first_index)
{
    double m = 0.0;
    for (const auto& s : snapshots) {
        m = std::max(m, eps_norm(s, eps, first_index));
    }
    return m;
}

} // namespace bassnet
