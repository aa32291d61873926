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

#include "pinch/array.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace pinch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_bounds(int N, const ArrayBounds &b)
{
    if (N < 1)
        throw std::invalid_argument("At least one pinch is required.");
    if (!(b.spacing > 0))
        throw std::invalid_argument("Spacing floor must be positive.");
    if (!(b.hi > b.lo))
        throw std::invalid_argument("Empty waveguide segment.");
    if (double(N - 1) * b.spacing > b.hi - b.lo)
        throw InfeasibleError("The array does not fit on the waveguide segment.");
}

// Gradient of |h|^2 with respect to each pinch position.
Eigen::VectorXd power_gradient(const Eigen::VectorXd &x, const Point3 &user, const SystemConfig &cfg,
                               Attenuation att, std::complex<double> &h)
{
    h = channel_array(x, user, cfg, att);
    Eigen::VectorXd g(x.size());
    for (Eigen::Index n = 0; n < x.size(); ++n)
        g(n) = 2.0 * std::real(std::conj(h) * channel_at_derivative(x(n), 0.0, user, cfg, att));
    return g;
}

// Point where the monotone pinch phase reaches `value`, searching from `from`
// in direction `dir`.
double solve_phase(double value, double from, int dir, const Point3 &user, const SystemConfig &cfg)
{
    auto phi = [&](double x) { return pinch_phase(x, 0.0, user, cfg); };
    const double slope = std::max(two_pi * (cfg.refractive_index() - 1.0) / cfg.wavelength(), 1e-3);
    double a = from, b = from;
    double reach = std::abs(value - phi(from)) / slope + cfg.wavelength();
    if (dir > 0)
        while (phi(b = from + reach) < value)
            reach *= 2.0;
    else
        while (phi(a = from - reach) > value)
            reach *= 2.0;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b)
            break;
        (phi(mid) < value ? a : b) = mid;
    }
    return std::abs(phi(a) - value) <= std::abs(phi(b) - value) ? a : b;
}

// Align every pinch to `anchor` sweeping away from it; nullopt when the sweep
// leaves the segment.
std::optional<Eigen::VectorXd> align_sweep(const Eigen::VectorXd &start, Eigen::Index anchor, int dir,
                                           const Point3 &user, const ArrayBounds &bounds, const SystemConfig &cfg)
{
    auto phi = [&](double x) { return pinch_phase(x, 0.0, user, cfg); };
    Eigen::VectorXd x = start;
    const double ref = phi(x(anchor));
    const Eigen::Index N = x.size();
    for (Eigen::Index n = anchor + dir; n >= 0 && n < N; n += dir)
    {
        // Nearest admissible point to the stage-1 position, measured in turns.
        const double limit = x(n - dir) + dir * bounds.spacing;
        const double k_limit = (phi(limit) - ref) / two_pi;
        const double k_here = std::round((phi(start(n)) - ref) / two_pi);
        const double k_first = dir > 0 ? std::ceil(k_limit - 1e-12) : std::floor(k_limit + 1e-12);
        std::optional<double> best;
        for (double k : {k_here - 1.0, k_here, k_here + 1.0, k_first})
        {
            if (dir > 0 ? k < k_first : k > k_first)
                continue;
            double root = solve_phase(ref + two_pi * k, limit, dir, user, cfg);
            if (dir > 0 ? root < limit : root > limit)
                root = limit;
            if (!best || std::abs(root - start(n)) < std::abs(*best - start(n)))
                best = root;
        }
        if (*best < bounds.lo || *best > bounds.hi)
            return std::nullopt;
        x(n) = *best;
    }
    return x;
}

} // namespace

double array_snr(const Eigen::VectorXd &positions, const Point3 &user, const SystemConfig &cfg, Attenuation att)
{
    const double N = double(positions.size());
    return cfg.transmit_power() * std::norm(channel_array(positions, user, cfg, att)) / (N * cfg.noise_power());
}

double array_pathloss_objective(const Eigen::VectorXd &positions, const Point3 &user, const SystemConfig &cfg)
{
    const double C = user.y() * user.y() + cfg.height() * cfg.height();
    return (((positions.array() - user.x()).square() + C).rsqrt()).sum();
}

Eigen::VectorXd spaced_grid(double center, int N, const ArrayBounds &bounds)
{
    check_bounds(N, bounds);
    const double half = 0.5 * double(N - 1) * bounds.spacing;
    const double first = std::clamp(center - half, bounds.lo, bounds.hi - 2.0 * half);
    Eigen::VectorXd x(N);
    for (int n = 0; n < N; ++n)
        x(n) = first + double(n) * bounds.spacing;
    return x;
}

ArrayPlacement stage1_min_pathloss(const Point3 &user, int N, const ArrayBounds &bounds, const SystemConfig &cfg,
                                   Attenuation att)
{
    ArrayPlacement p;
    p.positions = spaced_grid(user.x(), N, bounds);
    p.spacing_floor = bounds.spacing;
    p.achieved_snr = array_snr(p.positions, user, cfg, att);
    return p;
}

ArrayPlacement stage2_phase_align(const ArrayPlacement &placement, const Point3 &user, const ArrayBounds &bounds,
                                  const SystemConfig &cfg, Attenuation att)
{
    const Eigen::Index N = placement.positions.size();
    if (N <= 1)
        return placement;
    auto aligned = align_sweep(placement.positions, 0, +1, user, bounds, cfg);
    if (!aligned)
        aligned = align_sweep(placement.positions, N - 1, -1, user, bounds, cfg);
    if (!aligned || !is_spaced(*aligned, bounds.spacing, bounds.lo, bounds.hi, 1e-12))
    {
        ArrayPlacement out = placement;
        out.degraded = true;
        return out;
    }
    ArrayPlacement out = placement;
    out.positions = *aligned;
    out.achieved_snr = array_snr(out.positions, user, cfg, att);
    out.degraded = false;
    return out;
}

double time_share_rate(double a, double t)
{
    if (!(t > 0) || !(a > 0))
        return 0.0;
    return t * std::log2(1.0 + a / t);
}

double time_share_for_rate(double a, double R, double T)
{
    if (!(R > 0))
        return 0.0;
    if (R > time_share_rate(a, T) * (1.0 + 1e-15))
        throw InfeasibleError("Rate level unreachable within the frame.");
    // g(t) = t log2(1 + a/t) - R is increasing and concave: Newton inside a
    // shrinking bracket, bisecting whenever a step leaves it.
    double lo = 0.0, hi = T, t = T;
    for (int it = 0; it < 200; ++it)
    {
        const double g = time_share_rate(a, t) - R;
        if (g == 0.0)
            return t;
        (g < 0 ? lo : hi) = t;
        if (hi - lo <= 1e-16 * hi)
            break;
        const double dg = std::log2(1.0 + a / t) - a / ((t + a) * std::numbers::ln2);
        double next = dg > 0 ? t - g / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == t)
            break;
        t = next;
    }
    return hi;
}

TimeAllocation allocate_time(const Eigen::VectorXd &a, double T)
{
    const Eigen::Index M = a.size();
    if (M == 0)
        throw std::invalid_argument("At least one user is required.");
    if (!(T > 0))
        throw std::invalid_argument("Frame length must be positive.");
    TimeAllocation out{{Eigen::VectorXd::Constant(M, T / double(M)), T}, 0.0};
    if (M == 1)
    {
        out.shares.t(0) = T;
        out.rate = time_share_rate(a(0), T);
        return out;
    }
    if (!((a.array() > 0).all()))
        return out;

    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index m = 0; m < M; ++m)
        hi = std::min(hi, time_share_rate(a(m), T));
    auto total = [&](double R)
    {
        double s = 0.0;
        for (Eigen::Index m = 0; m < M; ++m)
            s += time_share_for_rate(a(m), R, T);
        return s;
    };
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (total(mid) <= T ? lo : hi) = mid;
    }
    Eigen::VectorXd t(M);
    for (Eigen::Index m = 0; m < M; ++m)
        t(m) = time_share_for_rate(a(m), lo, T);
    t *= T / t.sum();
    out.shares.t = t;
    out.rate = std::numeric_limits<double>::infinity();
    for (Eigen::Index m = 0; m < M; ++m)
        out.rate = std::min(out.rate, time_share_rate(a(m), t(m)));
    return out;
}

Eigen::VectorXd tdma_effective_snrs(const Eigen::VectorXd &positions, const std::vector<Point3> &users,
                                    const SystemConfig &cfg, Attenuation att)
{
    Eigen::VectorXd a(static_cast<Eigen::Index>(users.size()));
    for (std::size_t m = 0; m < users.size(); ++m)
        a(static_cast<Eigen::Index>(m)) = array_snr(positions, users[m], cfg, att);
    return a;
}

TdmaArrayResult tdma_array_maxmin(const std::vector<Point3> &users, int N, const ArrayBounds &bounds, double T,
                                  const SystemConfig &cfg, const ArrayOptions &opt)
{
    if (users.empty())
        throw std::invalid_argument("At least one user is required.");
    check_bounds(N, bounds);
    const Attenuation att = opt.attenuation;
    const auto M = static_cast<Eigen::Index>(users.size());
    const double scale = cfg.transmit_power() / (double(N) * cfg.noise_power());

    auto aligned_start = [&](const Point3 &u)
    { return stage2_phase_align(stage1_min_pathloss(u, N, bounds, cfg, att), u, bounds, cfg, att); };

    auto finish = [&](const Eigen::VectorXd &x, std::vector<double> history, bool converged)
    {
        const auto alloc = allocate_time(tdma_effective_snrs(x, users, cfg, att), T);
        TdmaArrayResult r;
        r.placement = {x, bounds.spacing, 0.0, false};
        r.placement.achieved_snr = tdma_effective_snrs(x, users, cfg, att).minCoeff();
        r.shares = alloc.shares;
        r.min_rate = alloc.rate;
        r.history = std::move(history);
        r.converged = converged;
        return r;
    };

    if (M == 1)
    {
        const auto p = aligned_start(users[0]);
        auto r = finish(p.positions, {}, true);
        r.placement = p;
        r.history.push_back(r.min_rate);
        return r;
    }

    std::vector<Eigen::VectorXd> starts;
    for (const auto &u : users)
        starts.push_back(aligned_start(u).positions);
    double mean_x = 0.0;
    for (const auto &u : users)
        mean_x += u.x();
    mean_x /= double(M);
    Point3 centre = users[0];
    centre.x() = mean_x;
    starts.push_back(stage2_phase_align(stage1_min_pathloss(centre, N, bounds, cfg, att), users[0], bounds, cfg, att)
                         .positions);

    std::optional<TdmaArrayResult> best;
    for (const auto &start : starts)
    {
        Eigen::VectorXd x = start;
        std::vector<double> history;
        bool converged = false;
        for (int outer = 0; outer < opt.max_outer; ++outer)
        {
            const auto alloc = allocate_time(tdma_effective_snrs(x, users, cfg, att), T);
            if (!history.empty() && alloc.rate <= history.back() * (1.0 + opt.tolerance))
            {
                history.push_back(alloc.rate);
                converged = true;
                break;
            }
            history.push_back(alloc.rate);
            const Eigen::VectorXd t = alloc.shares.t;
            auto eval = [&](const Eigen::VectorXd &y)
            {
                Eigen::VectorXd f(M);
                Eigen::MatrixXd G(M, y.size());
                for (Eigen::Index m = 0; m < M; ++m)
                {
                    std::complex<double> h;
                    const Eigen::VectorXd dpow = power_gradient(y, users[m], cfg, att, h);
                    const double a = scale * std::norm(h);
                    f(m) = time_share_rate(a, t(m));
                    G.row(m) = (scale * t(m) / ((t(m) + a) * std::numbers::ln2)) * dpow.transpose();
                }
                return std::make_pair(f, G);
            };
            x = sca_maxmin(eval, x, bounds.spacing, bounds.lo, bounds.hi, opt.sca).x;
        }
        auto r = finish(x, history, converged);
        if (!converged)
            r.history.push_back(r.min_rate);
        if (!best || r.min_rate > best->min_rate)
            best = std::move(r);
    }
    return *best;
}

double noma_array_power_share(const Eigen::VectorXd &positions, const Point3 &primary, const Point3 &secondary,
                              double gamma_p, const SystemConfig &cfg, const NomaNoise &noise, Attenuation att)
{
    const double N = double(positions.size());
    const double P = cfg.transmit_power();
    const double g = gamma_p;
    double share = 0.0;
    const std::pair<const Point3 *, double> users[] = {{&primary, noise.primary}, {&secondary, noise.secondary}};
    for (const auto &[u, sigma2] : users)
    {
        const double gain = std::norm(channel_array(positions, *u, cfg, att));
        share = std::max(share, g / (1.0 + g) + g * N * sigma2 / ((1.0 + g) * P * gain));
    }
    return share;
}

NomaArrayResult noma_array_bcd(const Point3 &primary, const Point3 &secondary, int N, const ArrayBounds &bounds,
                               double gamma_p, const SystemConfig &cfg, const NomaNoise &noise,
                               const ArrayOptions &opt)
{
    if (!(gamma_p > 0))
        throw std::invalid_argument("Primary SINR target must be positive.");
    check_bounds(N, bounds);
    const Attenuation att = opt.attenuation;
    const double P = cfg.transmit_power();
    const double g = gamma_p;
    const double Nd = double(N);

    // Secondary SNR after the power step, negative when the primary cannot be
    // served: min over m of (1 - beta_m(x)) S(x).
    auto eval = [&](const Eigen::VectorXd &y)
    {
        std::complex<double> hs, hp;
        const Eigen::VectorXd ds = power_gradient(y, secondary, cfg, att, hs);
        const Eigen::VectorXd dp = power_gradient(y, primary, cfg, att, hp);
        const double S = P * std::norm(hs) / (Nd * noise.secondary);
        const Eigen::VectorXd dS = ds * (P / (Nd * noise.secondary));
        Eigen::VectorXd f(2);
        Eigen::MatrixXd G(2, y.size());
        const std::tuple<double, double, const Eigen::VectorXd *> terms[] = {
            {std::norm(hp), noise.primary, &dp}, {std::norm(hs), noise.secondary, &ds}};
        for (int m = 0; m < 2; ++m)
        {
            const auto &[gain, sigma2, dgain] = terms[m];
            const double c = g * Nd * sigma2 / ((1.0 + g) * P);
            const double beta = g / (1.0 + g) + c / gain;
            f(m) = (1.0 - beta) * S;
            G.row(m) = ((1.0 - beta) * dS + S * (c / (gain * gain)) * *dgain).transpose();
        }
        return std::make_pair(f, G);
    };
    auto objective = [&](const Eigen::VectorXd &y) { return eval(y).first.minCoeff(); };

    std::vector<Eigen::VectorXd> starts;
    auto aligned = [&](double centre, const Point3 &toward)
    {
        Point3 c = toward;
        c.x() = centre;
        return stage2_phase_align(stage1_min_pathloss(c, N, bounds, cfg, att), toward, bounds, cfg, att).positions;
    };
    starts.push_back(aligned(secondary.x(), secondary));
    starts.push_back(aligned(primary.x(), primary));
    starts.push_back(aligned(0.5 * (primary.x() + secondary.x()), secondary));
    if (att == Attenuation::ignore)
    {
        try
        {
            const double x1 = cr_noma_two_user(primary, secondary, g, cfg.with_transmit_power(P / Nd), noise).x_star;
            starts.push_back(aligned(x1, secondary));
        }
        catch (const InfeasibleError &)
        {
        }
    }

    std::optional<NomaArrayResult> best;
    for (const auto &start : starts)
    {
        Eigen::VectorXd x = project_spaced(start, bounds.spacing, bounds.lo, bounds.hi);
        std::vector<double> history{objective(x)};
        bool converged = false;
        for (int outer = 0; outer < opt.max_outer; ++outer)
        {
            const auto sca = sca_maxmin(eval, x, bounds.spacing, bounds.lo, bounds.hi, opt.sca);
            const double prev = history.back();
            if (sca.objective > prev)
                x = sca.x;
            const double now = std::max(objective(x), prev);
            history.push_back(now);
            if (now - prev <= opt.tolerance * std::abs(prev))
            {
                converged = true;
                break;
            }
        }
        const double share = noma_array_power_share(x, primary, secondary, g, cfg, noise, att);
        if (share > 1.0)
            continue;
        NomaArrayResult r;
        r.placement = {x, bounds.spacing, 0.0, false};
        r.alpha_p = share;
        r.alpha_s = 1.0 - share;
        r.placement.achieved_snr = (1.0 - share) * array_snr(x, secondary, cfg, att) * cfg.noise_power() / noise.secondary;
        r.secondary_rate = std::log2(1.0 + r.placement.achieved_snr);
        r.history = std::move(history);
        r.converged = converged;
        if (!best || r.secondary_rate > best->secondary_rate)
            best = std::move(r);
    }
    if (!best)
        throw InfeasibleError("No pinch layout meets the primary QoS.");
    return *best;
}

} // namespace pinch
