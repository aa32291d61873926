// pinch: simulation library for dielectric-waveguide pinching-antenna systems
// Copyright (C) 2026 The pinch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "pinch/multi_waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pinch/siso.hpp"

namespace pinch {

namespace {

double sum_rate_from_products(const Eigen::MatrixXcd &HV, double noise)
{
    double s = 0.0;
    for (Eigen::Index m = 0; m < HV.rows(); ++m)
    {
        const double total = HV.row(m).squaredNorm();
        const double signal = std::norm(HV(m, m));
        s += std::log2(1.0 + signal / (total - signal + noise));
    }
    return s;
}

// Kuhn-Munkres on a square cost matrix; returns the column of each row.
std::vector<int> hungarian(const Eigen::MatrixXd &cost)
{
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i)
    {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do
        {
            used[j0] = 1;
            const int i0 = match[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j)
            {
                if (used[j])
                    continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j])
                {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta)
                {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j)
            {
                if (used[j])
                {
                    u[match[j]] += delta;
                    v[j] -= delta;
                }
                else
                    minv[j] -= delta;
            }
            j0 = j1;
        } while (match[j0] != 0);
        do
        {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n);
    for (int j = 1; j <= n; ++j)
        row_to_col[match[j] - 1] = j - 1;
    return row_to_col;
}

Eigen::VectorXd assigned_positions(const WaveguideLayout &layout, const std::vector<Point3> &users)
{
    const auto owner = assign_waveguides(layout, users);
    Eigen::VectorXd x(layout.count());
    for (int p = 0; p < layout.count(); ++p)
        x(p) = std::clamp(users[owner[p]].x(), 0.0, layout.region_side());
    return x;
}

void check_users(const std::vector<Point3> &users, double p_max)
{
    if (users.empty())
        throw std::invalid_argument("At least one user is required.");
    if (!(p_max > 0))
        throw std::invalid_argument("Transmit power must be positive.");
}

BeamformingSolution finish(const Eigen::MatrixXcd &H, Eigen::MatrixXcd V, double noise)
{
    BeamformingSolution s;
    s.rates = mu_miso_rates(H, V, noise);
    s.sum_rate = s.rates.sum();
    s.state = wmmse_receivers(H, V, noise);
    s.beamformers = std::move(V);
    return s;
}

} // namespace

Eigen::MatrixXcd multi_waveguide_channels(const WaveguideLayout &layout, const Eigen::VectorXd &positions,
                                          const std::vector<Point3> &users, const SystemConfig &cfg, Attenuation att)
{
    Eigen::MatrixXcd H(static_cast<Eigen::Index>(users.size()), layout.count());
    for (std::size_t m = 0; m < users.size(); ++m)
        H.row(static_cast<Eigen::Index>(m)) = channel_multi_waveguide(layout, positions, users[m], cfg, att).transpose();
    return H;
}

Eigen::VectorXd mu_miso_rates(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &V, double noise)
{
    const Eigen::MatrixXcd HV = H * V;
    Eigen::VectorXd r(HV.rows());
    for (Eigen::Index m = 0; m < HV.rows(); ++m)
    {
        const double total = HV.row(m).squaredNorm();
        const double signal = std::norm(HV(m, m));
        r(m) = std::log2(1.0 + signal / (total - signal + noise));
    }
    return r;
}

WmmseState wmmse_receivers(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &V, double noise)
{
    const Eigen::MatrixXcd HV = H * V;
    const Eigen::Index M = HV.rows();
    WmmseState s{Eigen::VectorXcd(M), Eigen::VectorXd(M), Eigen::VectorXd(M)};
    for (Eigen::Index m = 0; m < M; ++m)
    {
        const double J = HV.row(m).squaredNorm() + noise;
        s.u(m) = std::conj(HV(m, m)) / J;
        s.e(m) = 1.0 - std::norm(HV(m, m)) / J;
        s.w(m) = 1.0 / s.e(m);
    }
    return s;
}

Eigen::MatrixXcd wmmse_beamformers(const Eigen::MatrixXcd &H, const WmmseState &state, double p_max, double &mu)
{
    const Eigen::Index M = H.rows(), P = H.cols();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(P, P);
    Eigen::MatrixXcd B(P, M);
    for (Eigen::Index m = 0; m < M; ++m)
    {
        const Eigen::VectorXcd g = H.row(m).conjugate().transpose();
        A.noalias() += (state.w(m) * std::norm(state.u(m))) * g * g.adjoint();
        B.col(m) = (state.w(m) * std::conj(state.u(m))) * g;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(A);
    const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd coef = (eig.eigenvectors().adjoint() * B).cwiseAbs2();
    const double floor = 1e-12 * std::max(lambda.maxCoeff(), 1e-300);

    auto power = [&](double m)
    {
        double s = 0.0;
        for (Eigen::Index i = 0; i < P; ++i)
        {
            const double d = lambda(i) + m;
            if (d > floor)
                s += coef.row(i).sum() / (d * d);
        }
        return s;
    };
    auto solve = [&](double m)
    {
        Eigen::VectorXd inv(P);
        for (Eigen::Index i = 0; i < P; ++i)
        {
            const double d = lambda(i) + m;
            inv(i) = d > floor ? 1.0 / d : 0.0;
        }
        return Eigen::MatrixXcd(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().adjoint() * B);
    };

    mu = 0.0;
    if (power(0.0) <= p_max)
        return solve(0.0);
    double lo = 0.0, hi = std::sqrt(coef.sum() / p_max);
    while (power(hi) > p_max)
        hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (power(mid) > p_max ? lo : hi) = mid;
    }
    mu = hi;
    Eigen::MatrixXcd V = solve(hi);
    const double used = V.squaredNorm();
    if (used > p_max)
        V *= std::sqrt(p_max / used);
    return V;
}

Eigen::MatrixXcd mrt_equal_power(const Eigen::MatrixXcd &H, double p_max)
{
    const Eigen::Index M = H.rows();
    Eigen::MatrixXcd V(H.cols(), M);
    for (Eigen::Index m = 0; m < M; ++m)
    {
        const double n = H.row(m).norm();
        V.col(m) = n > 0 ? Eigen::VectorXcd(H.row(m).conjugate().transpose() * (std::sqrt(p_max / double(M)) / n))
                         : Eigen::VectorXcd::Constant(H.cols(), std::sqrt(p_max / double(M * H.cols())));
    }
    return V;
}

BeamformingSolution wmmse_fixed_channels(const Eigen::MatrixXcd &H, double noise, double p_max,
                                         const WmmseOptions &opt)
{
    Eigen::MatrixXcd V = mrt_equal_power(H, p_max);
    double best = mu_miso_rates(H, V, noise).sum();
    std::vector<double> history{best};
    double mu = 0.0;
    bool converged = false;
    for (int it = 0; it < opt.max_iterations; ++it)
    {
        const auto state = wmmse_receivers(H, V, noise);
        double m = 0.0;
        const Eigen::MatrixXcd next = wmmse_beamformers(H, state, p_max, m);
        const double rate = mu_miso_rates(H, next, noise).sum();
        const double prev = best;
        if (rate > best)
        {
            V = next;
            best = rate;
            mu = m;
        }
        history.push_back(best);
        if (best - prev <= opt.tolerance * std::abs(prev))
        {
            converged = true;
            break;
        }
    }
    auto s = finish(H, V, noise);
    s.multiplier = mu;
    s.history = std::move(history);
    s.converged = converged;
    return s;
}

std::vector<int> assign_waveguides(const WaveguideLayout &layout, const std::vector<Point3> &users)
{
    const int P = layout.count();
    const int M = static_cast<int>(users.size());
    if (M == 0)
        throw std::invalid_argument("At least one user is required.");
    Eigen::MatrixXd cost(P, M);
    for (int p = 0; p < P; ++p)
        for (int m = 0; m < M; ++m)
            cost(p, m) = std::abs(layout.offset(p) - users[m].y());

    std::vector<int> owner(P, -1);
    if (P == M)
        return hungarian(cost);

    std::vector<std::pair<int, int>> pairs;
    for (int p = 0; p < P; ++p)
        for (int m = 0; m < M; ++m)
            pairs.emplace_back(p, m);
    std::stable_sort(pairs.begin(), pairs.end(),
                     [&](const auto &a, const auto &b) { return cost(a.first, a.second) < cost(b.first, b.second); });
    std::vector<char> taken(M, 0);
    int assigned = 0;
    for (const auto &[p, m] : pairs)
    {
        if (assigned == std::min(P, M))
            break;
        if (owner[p] >= 0 || taken[m])
            continue;
        owner[p] = m;
        taken[m] = 1;
        ++assigned;
    }
    for (int p = 0; p < P; ++p)
    {
        if (owner[p] >= 0)
            continue;
        int nearest = 0;
        for (int m = 1; m < M; ++m)
            if (cost(p, m) < cost(p, nearest))
                nearest = m;
        owner[p] = nearest;
    }
    return owner;
}

BeamformingSolution two_stage_mrt_wmmse(const WaveguideLayout &layout, const std::vector<Point3> &users,
                                        const SystemConfig &cfg, double p_max, const WmmseOptions &opt)
{
    check_users(users, p_max);
    const Eigen::VectorXd x = assigned_positions(layout, users);
    const Eigen::MatrixXcd H = multi_waveguide_channels(layout, x, users, cfg, opt.attenuation);
    auto s = wmmse_fixed_channels(H, cfg.noise_power(), p_max, opt);
    s.positions = x;
    return s;
}

BeamformingSolution wmmse_bcd(const WaveguideLayout &layout, const std::vector<Point3> &users,
                              const SystemConfig &cfg, double p_max, const WmmseOptions &opt)
{
    check_users(users, p_max);
    const Attenuation att = opt.attenuation;
    const int P = layout.count();
    const auto M = static_cast<Eigen::Index>(users.size());
    const double noise = cfg.noise_power();
    const double D = layout.region_side();
    const double coarse = opt.coarse_step > 0 ? opt.coarse_step : cfg.wavelength() / 4.0;
    const double fine = opt.fine_step;

    // Coarse-grid channels do not depend on the iterate: tabulate once.
    const long K = static_cast<long>(std::floor(D / coarse)) + 1;
    std::vector<Eigen::MatrixXcd> table(P, Eigen::MatrixXcd(M, K));
    for (int p = 0; p < P; ++p)
        for (long k = 0; k < K; ++k)
            for (Eigen::Index m = 0; m < M; ++m)
                table[p](m, k) = channel_at(double(k) * coarse, layout.offset(p), users[m], cfg, att);

    Eigen::VectorXd x = assigned_positions(layout, users);
    Eigen::MatrixXcd H = multi_waveguide_channels(layout, x, users, cfg, att);
    Eigen::MatrixXcd V = mrt_equal_power(H, p_max);
    double best = mu_miso_rates(H, V, noise).sum();
    std::vector<double> history{best};
    double mu = 0.0;
    bool converged = false;

    for (int it = 0; it < opt.max_iterations; ++it)
    {
        const double prev = best;

        const auto state = wmmse_receivers(H, V, noise);
        double m_new = 0.0;
        const Eigen::MatrixXcd next = wmmse_beamformers(H, state, p_max, m_new);
        const double rate = mu_miso_rates(H, next, noise).sum();
        if (rate > best)
        {
            V = next;
            best = rate;
            mu = m_new;
        }

        Eigen::MatrixXcd HV = H * V;
        for (int p = 0; p < P; ++p)
        {
            const Eigen::RowVectorXcd vp = V.row(p);
            auto trial = [&](const Eigen::VectorXcd &col)
            {
                double s = 0.0;
                for (Eigen::Index m = 0; m < M; ++m)
                {
                    const std::complex<double> dc = col(m) - H(m, p);
                    double total = 0.0, signal = 0.0;
                    for (Eigen::Index k = 0; k < M; ++k)
                    {
                        const double a = std::norm(HV(m, k) + dc * vp(k));
                        total += a;
                        if (k == m)
                            signal = a;
                    }
                    s += std::log2(1.0 + signal / (total - signal + noise));
                }
                return s;
            };
            double best_x = x(p), best_val = best;
            long best_k = -1;
            double coarse_val = -1.0;
            for (long k = 0; k < K; ++k)
            {
                const double v = trial(table[p].col(k));
                if (v > coarse_val)
                {
                    coarse_val = v;
                    best_k = k;
                }
            }
            const double centre = double(best_k) * coarse;
            for (double xf = std::max(0.0, centre - coarse); xf <= std::min(D, centre + coarse) + 1e-12; xf += fine)
            {
                Eigen::VectorXcd col(M);
                for (Eigen::Index m = 0; m < M; ++m)
                    col(m) = channel_at(xf, layout.offset(p), users[m], cfg, att);
                const double v = trial(col);
                if (v > best_val)
                {
                    best_val = v;
                    best_x = xf;
                }
            }
            if (coarse_val > best_val)
            {
                best_val = coarse_val;
                best_x = centre;
            }
            if (best_x != x(p) && best_val > best)
            {
                x(p) = best_x;
                Eigen::VectorXcd col(M);
                for (Eigen::Index m = 0; m < M; ++m)
                    col(m) = channel_at(best_x, layout.offset(p), users[m], cfg, att);
                HV += (col - H.col(p)) * vp;
                H.col(p) = col;
                best = sum_rate_from_products(HV, noise);
            }
        }

        history.push_back(best);
        if (best - prev <= opt.tolerance * std::abs(prev))
        {
            converged = true;
            break;
        }
    }

    auto s = finish(H, V, noise);
    s.positions = x;
    s.multiplier = mu;
    s.history = std::move(history);
    s.converged = converged;
    return s;
}

BeamformingSolution mrt_single_user(const WaveguideLayout &layout, const Point3 &user, const SystemConfig &cfg,
                                    double p_max, Attenuation att)
{
    if (!(p_max > 0))
        throw std::invalid_argument("Transmit power must be positive.");
    const SystemConfig placement_cfg = att == Attenuation::include ? cfg : cfg.with_attenuation(0.0);
    Eigen::VectorXd x(layout.count());
    for (int p = 0; p < layout.count(); ++p)
    {
        const Point3 relative(user.x(), user.y() - layout.offset(p), user.z());
        x(p) = optimal_position_siso(relative, placement_cfg, layout.region_side()).x_star;
    }
    const Eigen::MatrixXcd H = multi_waveguide_channels(layout, x, {user}, cfg, att);
    Eigen::MatrixXcd V = H.row(0).conjugate().transpose() * (std::sqrt(p_max) / H.row(0).norm());
    auto s = finish(H, V, cfg.noise_power());
    s.positions = x;
    s.history = {s.sum_rate};
    return s;
}

std::vector<Point3> ula_elements(int count, const SystemConfig &cfg)
{
    if (count < 1)
        throw std::invalid_argument("At least one antenna is required.");
    std::vector<Point3> e;
    const double d = cfg.wavelength() / 2.0;
    for (int i = 0; i < count; ++i)
        e.emplace_back(0.0, (double(i) - 0.5 * double(count - 1)) * d, cfg.height());
    return e;
}

BeamformingSolution ula_baseline(const std::vector<Point3> &users, int antennas, const SystemConfig &cfg,
                                 double p_max, const WmmseOptions &opt)
{
    check_users(users, p_max);
    const auto elements = ula_elements(antennas, cfg);
    Eigen::MatrixXcd H(static_cast<Eigen::Index>(users.size()), antennas);
    for (std::size_t m = 0; m < users.size(); ++m)
        for (int i = 0; i < antennas; ++i)
            H(static_cast<Eigen::Index>(m), i) = free_space_gain(elements[i], users[m], cfg);
    return wmmse_fixed_channels(H, cfg.noise_power(), p_max, opt);
}

} // namespace pinch
