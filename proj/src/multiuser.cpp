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

#include "pinch/multiuser.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pinch {

namespace {

double lateral(const Point3 &user, const SystemConfig &cfg)
{
    return user.y() * user.y() + cfg.height() * cfg.height();
}

double path_loss(double x, const Point3 &user, const SystemConfig &cfg)
{
    return (x - user.x()) * (x - user.x()) + lateral(user, cfg);
}

} // namespace

Eigen::VectorXd tdma_rates(const std::vector<Point3> &users, const SystemConfig &cfg, double x,
                           const Eigen::VectorXd &powers)
{
    const auto M = static_cast<Eigen::Index>(users.size());
    if (powers.size() != M)
        throw std::invalid_argument("One power per user is required.");
    Eigen::VectorXd rates(M);
    for (Eigen::Index m = 0; m < M; ++m)
    {
        const double snr = powers(m) * cfg.friis() / (path_loss(x, users[m], cfg) * cfg.noise_power());
        rates(m) = std::log2(1.0 + snr) / double(M);
    }
    return rates;
}

TdmaAllocation tdma_maxmin_closed_form(const std::vector<Point3> &users, const SystemConfig &cfg, double p_max)
{
    if (users.empty())
        throw std::invalid_argument("At least one user is required.");
    if (!(p_max > 0))
        throw std::invalid_argument("Transmit power must be positive.");

    const auto M = static_cast<Eigen::Index>(users.size());
    double x_star = 0.0;
    for (const auto &u : users)
        x_star += u.x();
    x_star /= double(M);

    Eigen::VectorXd tau(M);
    for (Eigen::Index m = 0; m < M; ++m)
        tau(m) = path_loss(x_star, users[m], cfg);
    const double total = tau.sum();

    TdmaAllocation out;
    out.x_star = x_star;
    out.powers = tau / total * p_max;
    out.snrs.resize(M);
    for (Eigen::Index m = 0; m < M; ++m)
        out.snrs(m) = out.powers(m) * cfg.friis() / (tau(m) * cfg.noise_power());
    out.min_rate = tdma_rates(users, cfg, x_star, out.powers).minCoeff();
    return out;
}

NomaEvaluation noma_evaluate(const Point3 &primary, const Point3 &secondary, const SystemConfig &cfg,
                             const NomaNoise &noise, double x, double alpha_p)
{
    const double A = cfg.transmit_power() * cfg.friis();
    const double alpha_s = 1.0 - alpha_p;
    const double tau_p = path_loss(x, primary, cfg);
    const double tau_s = path_loss(x, secondary, cfg);
    NomaEvaluation e;
    e.secondary_snr = alpha_s * A / (tau_s * noise.secondary);
    e.primary_sinr = alpha_p * A / (alpha_s * A + tau_p * noise.primary);
    e.sic_sinr = alpha_p * A / (alpha_s * A + tau_s * noise.secondary);
    return e;
}

NomaSolution cr_noma_two_user(const Point3 &primary, const Point3 &secondary, double gamma_p,
                              const SystemConfig &cfg, const NomaNoise &noise)
{
    if (!(gamma_p > 0))
        throw std::invalid_argument("Primary SINR target must be positive.");
    if (!(noise.primary > 0) || !(noise.secondary > 0))
        throw std::invalid_argument("Noise powers must be positive.");

    const double A = cfg.transmit_power() * cfg.friis();
    const double g = gamma_p;
    const double Cp = lateral(primary, cfg);
    const double Cs = lateral(secondary, cfg);
    const double sp = noise.primary, ss = noise.secondary;

    if (A < g * std::max(Cp * sp, Cs * ss))
        throw InfeasibleError("Primary QoS unreachable at any pinch position.");

    const double delta = std::abs(primary.x() - secondary.x());
    const double c = g * sp;
    const double K = A - c * Cp;
    const double u_max = std::sqrt(std::max(K, 0.0) / c);

    // Primary-interval half-width u fixes alpha_p; the SIC interval around x_s
    // then has half-width sqrt(r_s2(u)).
    auto alpha_of = [&](double u) { return (c * (u * u + Cp) + g * A) / (A * (1.0 + g)); };
    auto r_s2 = [&](double u) { return sp * (u * u + Cp) / ss - Cs; };
    auto feasible = [&](double u)
    {
        const double r = r_s2(u);
        if (r < 0)
            return false;
        return u >= delta || u + std::sqrt(r) >= delta;
    };
    auto value = [&](double u)
    {
        const double dist = std::max(delta - u, 0.0);
        return (1.0 - alpha_of(u)) * A / ((dist * dist + Cs) * ss);
    };

    if (!feasible(u_max))
        throw InfeasibleError("No pinch position satisfies both the primary and SIC constraints.");

    double u_lo = 0.0;
    if (!feasible(0.0))
    {
        double lo = 0.0, hi = u_max;
        for (int it = 0; it < 200 && hi - lo > 0; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            (feasible(mid) ? hi : lo) = mid;
        }
        u_lo = hi;
    }

    std::vector<double> candidates{u_lo, u_max, std::clamp(delta, u_lo, u_max)};
    // d/du of (K - c u^2) / ((delta - u)^2 + C_s) vanishes on
    // c delta u^2 - (c (delta^2 + C_s) + K) u + delta K = 0.
    if (delta > 0)
    {
        const double qa = c * delta;
        const double qb = -(c * (delta * delta + Cs) + K);
        const double qc = delta * K;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0)
        {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (qb - sq); // qb < 0: stable form
            for (double root : {q / qa, qc / q})
                if (root >= u_lo && root <= std::min(delta, u_max))
                    candidates.push_back(root);
        }
    }

    double u_best = candidates.front();
    for (double u : candidates)
        if (value(u) > value(u_best))
            u_best = u;

    const double alpha_p = std::min(alpha_of(u_best), 1.0);
    const double dir = secondary.x() >= primary.x() ? 1.0 : -1.0;
    const double beta_p = u_best;
    const double beta_s = std::sqrt(std::max(r_s2(u_best), 0.0));
    const double x_opt = u_best >= delta ? secondary.x() : primary.x() + dir * u_best;

    auto admissible = [&](double x)
    {
        const auto e = noma_evaluate(primary, secondary, cfg, noise, x, alpha_p);
        return e.primary_sinr >= g * (1.0 - 1e-9) && e.sic_sinr >= g * (1.0 - 1e-9);
    };

    // Both textbook candidates x_p -/+ beta_p and x_s +/- beta_s, plus the
    // interval point closest to x_s; best objective wins, ties to smaller x.
    double x_star = x_opt;
    double best = admissible(x_opt) ? noma_evaluate(primary, secondary, cfg, noise, x_opt, alpha_p).secondary_snr : -1.0;
    for (double x : {primary.x() + dir * beta_p, secondary.x() - dir * beta_s})
    {
        if (!admissible(x))
            continue;
        const double v = noma_evaluate(primary, secondary, cfg, noise, x, alpha_p).secondary_snr;
        if (v > best * (1.0 + 1e-12) || (v >= best * (1.0 - 1e-12) && x < x_star))
        {
            best = std::max(best, v);
            x_star = x;
        }
    }
    if (best < 0)
        throw std::logic_error("Closed-form NOMA candidates failed their own feasibility check.");

    const auto e = noma_evaluate(primary, secondary, cfg, noise, x_star, alpha_p);
    return {x_star, alpha_p, 1.0 - alpha_p, e.secondary_snr, std::log2(1.0 + e.secondary_snr), e.primary_sinr};
}

NomaSolution noma_grid_oracle(const Point3 &primary, const Point3 &secondary, double gamma_p,
                              const SystemConfig &cfg, const NomaNoise &noise, const NomaGrid &grid,
                              double x_lo, double x_hi)
{
    if (!(grid.dx > 0) || !(grid.dalpha > 0))
        throw std::invalid_argument("Grid resolutions must be positive.");
    if (!(x_hi >= x_lo))
        throw std::invalid_argument("Empty position range.");

    const long nx = static_cast<long>(std::floor((x_hi - x_lo) / grid.dx + 1e-9));
    const long na = static_cast<long>(std::floor(1.0 / grid.dalpha + 1e-9));

    NomaSolution best{0, 0, 0, -1.0, 0, 0};
    for (long i = 0; i <= nx; ++i)
    {
        const double x = x_lo + double(i) * grid.dx;
        auto ok = [&](long j)
        {
            const auto e = noma_evaluate(primary, secondary, cfg, noise, x, std::min(double(j) * grid.dalpha, 1.0));
            return e.primary_sinr >= gamma_p && e.sic_sinr >= gamma_p;
        };
        if (!ok(na))
            continue;
        long lo = -1, hi = na; // ok(hi) holds, ok(lo) treated as false
        while (hi - lo > 1)
        {
            const long mid = (lo + hi) / 2;
            (ok(mid) ? hi : lo) = mid;
        }
        const double a = std::min(double(hi) * grid.dalpha, 1.0);
        const auto e = noma_evaluate(primary, secondary, cfg, noise, x, a);
        if (e.secondary_snr > best.secondary_snr)
            best = {x, a, 1.0 - a, e.secondary_snr, std::log2(1.0 + e.secondary_snr), e.primary_sinr};
    }
    if (best.secondary_snr < 0)
        throw InfeasibleError("No feasible grid point.");
    return best;
}

} // namespace pinch
