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

#include "pinch/harness/oracles.hpp"

#include "pinch/harness/csv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pinch/array.hpp"
#include "pinch/coop.hpp"
#include "pinch/isac.hpp"
#include "pinch/multi_waveguide.hpp"
#include "pinch/multiuser.hpp"
#include "pinch/siso.hpp"

namespace pinch::harness {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double light_speed = 299792458.0;

const SystemConfig &table()
{
    static const SystemConfig cfg = SystemConfig::table_defaults();
    return cfg;
}

OracleCheck make(std::string scope, std::string name, double tolerance, double worst, std::string detail = {})
{
    OracleCheck c{std::move(scope), std::move(name), tolerance, worst, worst <= tolerance, false, std::move(detail)};
    return c;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// Monotone non-decreasing up to 1e-12 relative slack; returns the worst drop.
double worst_drop(const std::vector<double> &h)
{
    double worst = 0.0;
    for (std::size_t i = 1; i < h.size(); ++i)
        worst = std::max(worst, (h[i - 1] - h[i]) / std::max(std::abs(h[i - 1]), 1e-300));
    return worst;
}

std::vector<Point3> random_users(std::mt19937_64 &rng, int M, double length, double width)
{
    std::uniform_real_distribution<double> ux(0.0, length), uy(-width / 2, width / 2);
    std::vector<Point3> users;
    for (int m = 0; m < M; ++m)
    {
        const double x = ux(rng);
        users.emplace_back(x, uy(rng), 0.0);
    }
    return users;
}

// ---- core model ----------------------------------------------------------

OracleCheck check_attenuation_magnitude()
{
    const double got = std::abs(in_waveguide_gain(100.0, table()));
    return make("core-model", "in-waveguide magnitude at 100 m", 1e-12, rel(got, std::exp(-0.92)));
}

OracleCheck check_free_space_magnitude()
{
    const double lambda = light_speed / 28e9;
    const double want = lambda / (4.0 * pi) / 5.0;
    const double got = std::abs(free_space_gain(Point3(0, 0, 5), Point3(0, 0, 0), table()));
    std::ostringstream d;
    d << "|h| = " << got;
    return make("core-model", "free-space magnitude at 5 m", 1e-12, rel(got, want), d.str());
}

OracleCheck check_channel_terms()
{
    const double lambda = light_speed / 28e9, lambda_g = lambda / 1.4;
    const double eta = lambda * lambda / (16.0 * pi * pi);
    const double d = std::sqrt(0.0 + 4.0 + 25.0);
    const std::complex<double> want = std::exp(-0.0092 * 10.0) * std::polar(1.0, -2.0 * pi * 10.0 / lambda_g) *
                                      std::sqrt(eta) / d * std::polar(1.0, -2.0 * pi * d / lambda);
    const auto got = channel_single(10.0, Point3(10, 2, 0), table());
    return make("core-model", "single-pinch channel term by term", 1e-12, std::abs(got - want) / std::abs(want));
}

OracleCheck check_triangle(int layouts, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < layouts; ++i)
    {
        Eigen::VectorXd x(4);
        for (auto &v : x)
            v = ux(rng);
        std::sort(x.begin(), x.end());
        const Point3 u = random_users(rng, 1, 10.0, 10.0)[0];
        const double sum = std::abs(channel_array(x, u, table()));
        const double bound = channel_array_magnitude_bound(x, u, table());
        worst = std::max(worst, (sum - bound) / bound);

        const ArrayBounds b{0.0, 10.0, table().wavelength() / 2};
        const auto aligned = stage2_phase_align(stage1_min_pathloss(u, 4, b, table()), u, b, table());
        const double a = std::abs(channel_array(aligned.positions, u, table(), Attenuation::ignore));
        const double ab = channel_array_magnitude_bound(aligned.positions, u, table(), Attenuation::ignore);
        worst = std::max(worst, (0.998 * ab - a) / ab);
    }
    return make("core-model", "|sum| <= sum|terms|, near-equality when aligned", 1e-12, std::max(worst, 0.0));
}

// ---- single waveguide, single pinch ---------------------------------------

std::pair<double, double> siso_grid(const Point3 &user, const SystemConfig &cfg, double D)
{
    double bx = 0.0, bs = -1.0;
    const long n = std::lround(D / 1e-3);
    for (long i = 0; i <= n; ++i)
    {
        const double x = double(i) * 1e-3;
        const double s = siso_snr(x, user, cfg);
        if (s > bs)
            bs = s, bx = x;
    }
    return {bx, bs};
}

OracleCheck check_siso_reference_point()
{
    const Point3 user(50.0, 0.0, 0.0);
    const auto closed = optimal_position_siso(user, table(), 80.0);
    const auto [gx, gs] = siso_grid(user, table(), 80.0);
    std::ostringstream d;
    d << "x* = " << closed.x_star << ", grid " << gx;
    const double worst = std::max({std::abs(closed.x_star - gx) / 2e-3, std::abs(closed.x_star - 49.77) / 5e-3,
                                   (gs - closed.snr) / (1e-6 * gs)});
    return make("siso-placement", "reference user at 50 m", 1.0, worst, d.str());
}

OracleCheck check_region_rule()
{
    const double side = max_region_side(table(), 0.1);
    double worst = std::max(0.0, 92.88 - side);
    double prev = 1e300;
    for (double dv = 1.0; dv <= 20.0; dv += 1.0)
    {
        double s = 0.0;
        try
        {
            s = max_region_side(table().with_height(dv), 0.1);
        }
        catch (const InfeasibleError &)
        {
        }
        worst = std::max(worst, s - prev);
        prev = s;
    }
    std::ostringstream d;
    d << "D_max(d_v = 5) = " << side;
    return make("siso-placement", "region-size rule decreases in height", 0.0, worst, d.str());
}

OracleCheck check_blockage_limit()
{
    double worst = 0.0;
    for (double D : {10.0, 20.0, 40.0})
        for (double beta : {1e-5, 1e-6})
            worst = std::max(worst, rel(expected_rate_gap_blockage(table(), BlockageModel(beta), D).gap,
                                        expected_rate_gap_los(table(), D).gap));
    return make("siso-placement", "blockage gap tends to the LoS gap", 0.01, worst);
}

// ---- array on one waveguide ------------------------------------------------

OracleCheck check_stage1(int users, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const double half = table().wavelength() / 2;
    const ArrayBounds b{0.0, 5.0, half};
    double worst = 0.0;
    for (const auto &u : random_users(rng, users, 5.0, 5.0))
    {
        const double got = array_pathloss_objective(stage1_min_pathloss(u, 4, b, table()).positions, u, table());
        double best = 0.0;
        const double last = 5.0 - 3.0 * half;
        for (long i = 0; i <= 100000; ++i)
        {
            Eigen::VectorXd x(4);
            for (int n = 0; n < 4; ++n)
                x(n) = last * double(i) / 100000.0 + n * half;
            best = std::max(best, array_pathloss_objective(x, u, table()));
        }
        worst = std::max(worst, (best - got) / best);
    }
    return make("array-waveguide", "stage-1 grid vs exhaustive offset search", 1e-9, std::max(worst, 0.0));
}

OracleCheck check_time_allocation(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> la(0.0, 6.0);
    auto share = [](double a, double R)
    {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 300; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (mid * std::log2(1.0 + a / mid) < R ? lo : hi) = mid;
        }
        return hi;
    };
    double worst = 0.0;
    for (int i = 0; i < instances; ++i)
    {
        Eigen::VectorXd a(3);
        for (auto &v : a)
            v = std::pow(10.0, la(rng));
        double lo = 0.0, hi = 1e9;
        for (auto v : a)
            hi = std::min(hi, std::log2(1.0 + v));
        while (hi - lo > 1e-8 * hi)
        {
            const double mid = 0.5 * (lo + hi);
            double s = 0.0;
            for (auto v : a)
                s += share(v, mid);
            (s <= 1.0 ? lo : hi) = mid;
        }
        worst = std::max(worst, rel(allocate_time(a, 1.0).rate, lo));
    }
    return make("array-waveguide", "time allocation vs rate-level bisection", 2e-8, worst);
}

// ---- multiple waveguides ---------------------------------------------------

OracleCheck check_mrt_grid(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const WaveguideLayout layout(4, table().height(), 20.0, table().wavelength());
    double worst = 0.0;
    for (const auto &u : random_users(rng, instances, 20.0, 20.0))
    {
        const auto s = mrt_single_user(layout, u, table(), 1.0, Attenuation::include);
        double gain = 0.0;
        for (int p = 0; p < 4; ++p)
        {
            double best = 0.0;
            for (long i = 0; i <= 20000; ++i)
                best = std::max(best, std::norm(channel_at(double(i) * 1e-3, layout.offset(p), u, table())));
            gain += best;
        }
        const double snr = std::pow(2.0, s.sum_rate) - 1.0;
        worst = std::max(worst, rel(snr, gain / table().noise_power()));
    }
    return make("multi-waveguide", "single-user MRT vs per-waveguide grid", 1e-6, worst);
}

OracleCheck check_two_stage_ratio(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const WaveguideLayout layout(8, table().height(), 20.0, table().wavelength());
    double acc = 0.0, low = 1e300;
    for (int i = 0; i < instances; ++i)
    {
        const auto users = random_users(rng, 8, 20.0, 20.0);
        const double r = two_stage_mrt_wmmse(layout, users, table(), table().transmit_power()).sum_rate /
                         wmmse_bcd(layout, users, table(), table().transmit_power()).sum_rate;
        acc += r;
        low = std::min(low, r);
    }
    std::ostringstream d;
    d << "mean two-stage/joint = " << acc / instances << ", min = " << low << " over " << instances << " instances";
    auto c = make("multi-waveguide", "two-stage share of the joint sum rate", 0.0, 0.0, d.str());
    c.informational = true;
    c.passed = true;
    return c;
}

// ---- applications ----------------------------------------------------------

IsacScene oracle_scene(Point3 user, Point3 target, int P, int Q)
{
    IsacScene s{user, target, 1.0, Eigen::VectorXd(P), Eigen::VectorXd(Q), dbm_to_watt(-140.0), 0.0, 20.0};
    for (int p = 0; p < P; ++p)
        s.tx_offsets(p) = 2.0 * p - (P - 1.0);
    for (int q = 0; q < Q; ++q)
        s.rx_offsets(q) = 2.0 * q - (Q - 1.0) + 0.5;
    return s;
}

OracleCheck check_sensing_terms()
{
    const auto s = oracle_scene({4, 2, 0}, {14, -2, 0}, 2, 3);
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(2, 9.0);
    Eigen::VectorXcd w(2);
    w << std::complex<double>(0.6, 0.1), std::complex<double>(-0.2, 0.7);
    const double lambda = light_speed / 28e9, lambda_g = lambda / 1.4;
    const double eta = lambda * lambda / (16.0 * pi * pi);
    std::complex<double> amp = 0.0;
    for (int p = 0; p < 2; ++p)
    {
        const double d = std::sqrt(25.0 + std::pow(s.tx_offsets(p) + 2.0, 2) + 25.0);
        amp += std::sqrt(eta) / d * std::polar(1.0, -2.0 * pi * (d / lambda + 9.0 / lambda_g)) * w(p);
    }
    double gain = 0.0;
    for (int q = 0; q < 3; ++q)
        gain += eta / (std::pow(s.rx_offsets(q) + 2.0, 2) + 25.0);
    const double want = gain * std::norm(amp) / (3.0 * s.sensing_noise);
    return make("applications", "sensing SNR term by term", 1e-12, rel(sensing_snr(w, x, s, table()), want));
}

OracleCheck check_isac_sweep(int scenes, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<double> floors;
    for (double db = 0.0; db <= 24.0; db += 2.0)
        floors.push_back(db_to_linear(db));
    double worst = 0.0;
    for (int i = 0; i < scenes; ++i)
    {
        const auto pts = random_users(rng, 2, 20.0, 10.0);
        auto s = oracle_scene(pts[0], pts[1], 4, 3);
        const auto sweep = isac_sweep(s, table(), 1.0, floors);
        double last = 1e300;
        for (std::size_t k = 0; k < floors.size(); ++k)
        {
            s.sensing_floor = floors[k];
            const double rate = sweep[k] ? sweep[k]->comm_rate : 0.0;
            worst = std::max(worst, rate - last);
            last = rate;
            if (sweep[k])
                worst = std::max(worst, (floors[k] - sweep[k]->sensing) / floors[k] - 1e-6);
            try
            {
                worst = std::max(worst, isac_midpoint_baseline(s, table(), 1.0).comm_rate - rate);
            }
            catch (const InfeasibleError &)
            {
            }
        }
    }
    return make("applications", "sensing-floor sweep: monotone, feasible, above midpoint", 0.0, worst);
}

OracleCheck check_beam_family(int scenes, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < scenes; ++i)
    {
        const auto pts = random_users(rng, 2, 20.0, 10.0);
        auto s = oracle_scene(pts[0], pts[1], 2, 2);
        Eigen::VectorXd x(2);
        x << 0.5 * (s.user.x() + s.target.x()), s.target.x();
        const auto mrt = isac_beamformer(x, s, table(), 1.0);
        const Eigen::VectorXcd ht = isac_tx_channel(x, s.target, s, table());
        const double top = sensing_snr(Eigen::VectorXcd(ht.conjugate() / ht.norm()), x, s, table());
        s.sensing_floor = mrt->sensing + 0.5 * (top - mrt->sensing);
        const auto family = isac_beamformer(x, s, table(), 1.0);
        const Eigen::VectorXcd hu = isac_tx_channel(x, s.user, s, table());
        const Eigen::VectorXcd eu = hu.conjugate() / hu.norm();
        Eigen::VectorXcd perp = ht.conjugate() - eu * eu.dot(ht.conjugate());
        perp /= perp.norm();
        double best = 0.0;
        for (int a = 0; a <= 1000; ++a)
            for (int k = 0; k < 360; ++k)
            {
                const double r = 0.5 * pi * a / 1000.0;
                const Eigen::VectorXcd w = std::cos(r) * eu + std::sin(r) * std::polar(1.0, 2.0 * pi * k / 360.0) * perp;
                if (sensing_snr(w, x, s, table()) >= s.sensing_floor)
                    best = std::max(best, communication_snr(w, x, s, table()));
            }
        worst = std::max(worst, (best - family->comm_snr) / best);
    }
    return make("applications", "beamformer family vs two-parameter search", 1e-9, std::max(worst, 0.0));
}

} // namespace

// ---- public checks ---------------------------------------------------------

OracleCheck check_siso_closed_form(int users, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double worst_x = 0.0, worst_snr = 0.0;
    for (double dv : {5.0, 10.0})
    {
        const auto cfg = table().with_height(dv);
        for (const auto &u : random_users(rng, users, 80.0, 80.0))
        {
            const auto closed = optimal_position_siso(u, cfg, 80.0);
            const auto [gx, gs] = siso_grid(u, cfg, 80.0);
            worst_x = std::max(worst_x, std::abs(closed.x_star - gx));
            worst_snr = std::max(worst_snr, (gs - closed.snr) / gs);
        }
    }
    std::ostringstream d;
    d << "max |x - x_grid| = " << worst_x << " m, max SNR shortfall = " << worst_snr;
    return make("siso-placement", "closed-form placement vs 1e-3 m grid", 1.0,
                std::max(worst_x / 2e-3, worst_snr / 1e-6), d.str());
}

OracleCheck check_rate_gap_monte_carlo(double side, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    double acc = 0.0;
    for (const auto &u : random_users(rng, trials, side, side))
        acc += optimal_position_siso(u, table(), side).rate - std::log2(1.0 + siso_snr(u.x(), u, table()));
    const double mc = acc / trials, formula = expected_rate_gap_los(table(), side).gap;
    std::ostringstream d;
    d << "D = " << side << ": Monte Carlo " << mc << ", formula " << formula;
    return make("siso-placement", "rate gap Monte Carlo, D = " + format_real(side), 0.2, rel(mc, formula), d.str());
}

OracleCheck check_tdma_closed_form(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(2, 5);
    const auto &cfg = table();
    double worst_snr = 0.0, worst_gap = 0.0;
    bool mean_exact = true;
    for (int i = 0; i < instances; ++i)
    {
        const auto users = random_users(rng, count(rng), 20.0, 20.0);
        const auto sol = tdma_maxmin_closed_form(users, cfg, cfg.transmit_power());
        worst_snr = std::max(worst_snr, (sol.snrs.maxCoeff() - sol.snrs.minCoeff()) / sol.snrs.minCoeff());
        double mean = 0.0;
        for (const auto &u : users)
            mean += u.x();
        mean /= double(users.size());
        mean_exact = mean_exact && sol.x_star == mean;

        double grid = 0.0;
        for (long k = 0; k <= 20000; ++k)
        {
            const double x = double(k) * 1e-3;
            double total = 0.0;
            for (const auto &u : users)
                total += (x - u.x()) * (x - u.x()) + u.y() * u.y() + cfg.height() * cfg.height();
            grid = std::max(grid, std::log2(1.0 + cfg.transmit_power() * cfg.friis() / (total * cfg.noise_power())) /
                                      double(users.size()));
        }
        // Never below the grid, and no further above it than the grid step allows.
        worst_gap = std::max({worst_gap, (grid - sol.min_rate) / 1e-12, (sol.min_rate - grid) / 1e-6});
    }
    std::ostringstream d;
    d << "max SNR spread = " << worst_snr << (mean_exact ? ", position is the mean" : ", position differs from mean");
    return make("multiuser-single", "TDMA closed form vs 1-D grid", 1.0,
                mean_exact ? std::max(worst_snr / 1e-9, worst_gap) : 1e300, d.str());
}

OracleCheck check_cr_noma(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pw(10.0, 40.0), gm(0.1, 3.0);
    const NomaNoise noise{table().noise_power(), table().noise_power()};
    double worst_below = 0.0, worst_slack = 0.0, worst_residual = 0.0;
    int checked = 0, attempts = 0;
    while (checked < instances && attempts < 100 * instances)
    {
        ++attempts;
        const auto users = random_users(rng, 2, 20.0, 20.0);
        const double g = gm(rng);
        const auto cfg = table().with_transmit_power(dbm_to_watt(pw(rng)));
        NomaSolution closed;
        try
        {
            closed = cr_noma_two_user(users[0], users[1], g, cfg, noise);
        }
        catch (const InfeasibleError &)
        {
            continue;
        }
        const auto oracle = noma_grid_oracle(users[0], users[1], g, cfg, noise, {}, 0.0, 20.0);
        worst_below = std::max(worst_below, oracle.secondary_rate - closed.secondary_rate);
        worst_slack = std::max(worst_slack, closed.secondary_rate - oracle.secondary_rate);
        const auto e = noma_evaluate(users[0], users[1], cfg, noise, closed.x_star, closed.alpha_p);
        worst_residual = std::max({worst_residual, (g - e.primary_sinr) / g, (g - e.sic_sinr) / g});
        ++checked;
    }
    std::ostringstream d;
    d << checked << " instances; max oracle excess = " << worst_below << ", max slack = " << worst_slack
      << ", max residual = " << worst_residual;
    const double worst = std::max({worst_below / 1e-12, worst_slack / 1e-3, worst_residual / 1e-9,
                                   checked < instances ? 1e300 : 0.0});
    return make("multiuser-single", "CR-NOMA closed form vs 2-D grid", 1.0, worst, d.str());
}

OracleCheck check_phase_alignment(int users, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const ArrayBounds b{0.0, 10.0, table().wavelength() / 2};
    double worst = 0.0;
    bool spaced = true, complete = true;
    int i = 0;
    for (const auto &u : random_users(rng, users, 10.0, 10.0))
    {
        const int N = 1 + (i++ % 8);
        const auto s2 = stage2_phase_align(stage1_min_pathloss(u, N, b, table()), u, b, table());
        complete = complete && !s2.degraded;
        spaced = spaced && is_spaced(s2.positions, b.spacing, b.lo, b.hi, 0.0);
        const double bound = channel_array_magnitude_bound(s2.positions, u, table(), Attenuation::ignore);
        worst = std::max(worst, (0.998 * bound - std::abs(channel_array(s2.positions, u, table(), Attenuation::ignore))) / bound);
    }
    std::ostringstream d;
    d << (spaced ? "spacing holds" : "spacing violated") << (complete ? "" : ", alignment incomplete");
    return make("array-waveguide", "phase alignment reaches 0.998 of coherent sum", 0.0,
                spaced && complete ? std::max(worst, 0.0) : 1e300, d.str());
}

OracleCheck check_tdma_array_monotone(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const ArrayBounds b{0.0, 5.0, table().wavelength() / 2};
    double worst = 0.0;
    for (int i = 0; i < instances; ++i)
        worst = std::max(worst, worst_drop(tdma_array_maxmin(random_users(rng, 3, 5.0, 5.0), 4, b, 1.0, table()).history));
    return make("array-waveguide", "array TDMA min rate never decreases", 1e-12, worst);
}

OracleCheck check_noma_array_monotone(int instances, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const ArrayBounds b{0.0, 5.0, table().wavelength() / 2};
    const NomaNoise noise{table().noise_power(), table().noise_power()};
    double worst = 0.0;
    int solved = 0;
    for (int i = 0; i < instances; ++i)
    {
        const auto users = random_users(rng, 2, 5.0, 5.0);
        try
        {
            worst = std::max(worst, worst_drop(noma_array_bcd(users[0], users[1], 4, b, 0.1, table(), noise).history));
            ++solved;
        }
        catch (const InfeasibleError &)
        {
        }
    }
    std::ostringstream d;
    d << solved << " feasible instances";
    return make("array-waveguide", "array NOMA secondary SNR never decreases", 1e-12, worst, d.str());
}

OracleCheck check_wmmse_monotone(int instances, int waveguides, double side, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const WaveguideLayout layout(waveguides, table().height(), side, table().wavelength());
    double worst = 0.0;
    for (int i = 0; i < instances; ++i)
        worst = std::max(worst, worst_drop(wmmse_bcd(layout, random_users(rng, waveguides, side, side), table(),
                                                     table().transmit_power())
                                               .history));
    return make("multi-waveguide", "joint WMMSE sum rate never decreases", 1e-12, worst);
}

OracleCheck check_coop(int configs, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> count(1, 16);
    std::uniform_real_distribution<double> dist(1.0, 200.0), expo(2.0, 4.0), snr_db(60.0, 130.0);
    const double eta = table().friis();
    double order = 0.0, terms = 0.0;
    bool p1_equal = true, best_ok = true;
    for (int i = 0; i < configs; ++i)
    {
        CoopConfig c;
        c.bs_antennas = count(rng);
        c.waveguides = count(rng);
        c.pinches = count(rng);
        c.bs_distance = dist(rng);
        c.pinch_distance = dist(rng);
        c.bs_exponent = expo(rng);
        c.pinch_exponent = expo(rng);
        c.transmit_snr = db_to_linear(snr_db(rng));
        const double bo = coop_snr(CoopScheme::bs_only, c, eta), sd = coop_snr(CoopScheme::sd, c, eta),
                     scd = coop_snr(CoopScheme::scd, c, eta), fcd = coop_snr(CoopScheme::fcd, c, eta);
        order = std::max({order, (scd - fcd) / fcd, (sd - scd) / scd});

        const double NB = c.bs_antennas, P = c.waveguides, N = c.pinches, g = c.transmit_snr;
        const double lb = std::exp(c.bs_exponent * std::log(c.bs_distance));
        const double lg = std::exp(c.pinch_exponent * std::log(c.pinch_distance));
        terms = std::max({terms, rel(bo, eta * NB * g / lb),
                          rel(sd, eta * NB * NB * g / (lb * (NB + P)) + eta * N * P * g / (lg * (NB + P))),
                          rel(scd, eta * NB * NB * g / (lb * (NB + P)) + eta * N * P * P * g / (lg * (NB + P))),
                          rel(fcd, eta * NB * g / lb + eta * N * P * g / lg)});
        best_ok = best_ok && coop_snr(coop_best_scheme(c, eta), c, eta) == std::max({bo, sd, scd, fcd});

        c.waveguides = 1;
        p1_equal = p1_equal && coop_snr(CoopScheme::sd, c, eta) == coop_snr(CoopScheme::scd, c, eta);
    }
    std::ostringstream d;
    d << configs << " configs; max ordering violation = " << order << ", max formula error = " << terms
      << (p1_equal ? "; SD = SCD at P = 1" : "; SD != SCD at P = 1") << (best_ok ? "" : "; best scheme mismatch");
    const bool exact = p1_equal && best_ok && order <= 0.0;
    const double worst = exact ? terms / 1e-12 : 1e300;
    return make("applications", "cooperative closed forms and ordering", 1.0, worst, d.str());
}

const std::vector<std::string_view> &oracle_scopes()
{
    static const std::vector<std::string_view> s{"core-model",      "siso-placement", "multiuser-single",
                                                 "array-waveguide", "multi-waveguide", "applications"};
    return s;
}

std::vector<OracleCheck> run_oracles(std::string_view scope, const OracleOptions &opt)
{
    if (!scope.empty() && std::find(oracle_scopes().begin(), oracle_scopes().end(), scope) == oracle_scopes().end())
        throw std::invalid_argument("Unknown oracle scope '" + std::string(scope) + "'.");
    auto n = [&](int base) { return std::max(1, int(std::lround(base * opt.effort))); };
    const auto seed = opt.seed;
    const std::vector<std::pair<std::string_view, std::function<OracleCheck()>>> suite{
        {"core-model", check_attenuation_magnitude},
        {"core-model", check_free_space_magnitude},
        {"core-model", check_channel_terms},
        {"core-model", [&] { return check_triangle(n(100), seed); }},
        {"siso-placement", [&] { return check_siso_closed_form(n(200), seed); }},
        {"siso-placement", check_siso_reference_point},
        {"siso-placement", [&] { return check_rate_gap_monte_carlo(20.0, n(20000), seed); }},
        {"siso-placement", check_region_rule},
        {"siso-placement", check_blockage_limit},
        {"multiuser-single", [&] { return check_tdma_closed_form(n(50), seed); }},
        {"multiuser-single", [&] { return check_cr_noma(n(50), seed); }},
        {"array-waveguide", [&] { return check_stage1(n(10), seed); }},
        {"array-waveguide", [&] { return check_phase_alignment(n(200), seed); }},
        {"array-waveguide", [&] { return check_time_allocation(n(30), seed); }},
        {"array-waveguide", [&] { return check_tdma_array_monotone(n(10), seed); }},
        {"array-waveguide", [&] { return check_noma_array_monotone(n(20), seed); }},
        {"multi-waveguide", [&] { return check_mrt_grid(n(5), seed); }},
        {"multi-waveguide", [&] { return check_wmmse_monotone(n(5), 4, 10.0, seed); }},
        {"multi-waveguide", [&] { return check_two_stage_ratio(n(10), seed); }},
        {"applications", check_sensing_terms},
        {"applications", [&] { return check_beam_family(n(3), seed); }},
        {"applications", [&] { return check_isac_sweep(n(4), seed); }},
        {"applications", [&] { return check_coop(1000, seed); }},
    };
    std::vector<OracleCheck> out;
    for (const auto &[s, fn] : suite)
        if (scope.empty() || s == scope)
            out.push_back(fn());
    return out;
}

} // namespace pinch::harness
