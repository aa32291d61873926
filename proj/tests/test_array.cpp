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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pinch/array.hpp"

using namespace pinch;

namespace {

const SystemConfig table = SystemConfig::table_defaults();
const double half_wave = table.wavelength() / 2.0;
const NomaNoise equal_noise{table.noise_power(), table.noise_power()};

ArrayBounds segment(double D) { return {0.0, D, half_wave}; }

// Reference inverse of t log2(1 + a/t) by plain bisection.
double share_by_bisection(double a, double R, double T)
{
    double lo = 0.0, hi = T;
    for (int it = 0; it < 300; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (mid * std::log2(1.0 + a / mid) < R ? lo : hi) = mid;
    }
    return hi;
}

// Max-min rate level by bisection on R with a 1e-8 stopping width.
double maxmin_level_oracle(const Eigen::VectorXd &a, double T)
{
    double lo = 0.0, hi = 1e9;
    for (Eigen::Index m = 0; m < a.size(); ++m)
        hi = std::min(hi, T * std::log2(1.0 + a(m) / T));
    while (hi - lo > 1e-8 * hi)
    {
        const double mid = 0.5 * (lo + hi);
        double s = 0.0;
        for (Eigen::Index m = 0; m < a.size(); ++m)
            s += share_by_bisection(a(m), mid, T);
        (s <= T ? lo : hi) = mid;
    }
    return lo;
}

void check_monotone(const std::vector<double> &h)
{
    for (std::size_t i = 1; i < h.size(); ++i)
        CHECK(h[i] >= h[i - 1] - 1e-12 * std::abs(h[i - 1]));
}

} // namespace

TEST_CASE("spaced projection")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 11.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        Eigen::VectorXd z(5);
        for (auto &v : z)
            v = u(rng);
        const auto p = project_spaced(z, 0.5, 0.0, 10.0);
        CHECK(is_spaced(p, 0.5, 0.0, 10.0));
        CHECK((project_spaced(p, 0.5, 0.0, 10.0) - p).norm() < 1e-12);

        // Variational inequality against random feasible points.
        for (int k = 0; k < 20; ++k)
        {
            Eigen::VectorXd y(5);
            for (auto &v : y)
                v = u(rng);
            y = project_spaced(y, 0.5, 0.0, 10.0);
            CHECK((z - p).dot(y - p) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(project_spaced(Eigen::VectorXd::Zero(3), 6.0, 0.0, 10.0), InfeasibleError);
}

TEST_CASE("stage 1 grid")
{
    const Point3 user(2.0, 1.0, 0.0);
    const auto one = stage1_min_pathloss(user, 1, segment(5.0), table);
    CHECK(one.positions(0) == 2.0);

    const auto three = stage1_min_pathloss(user, 3, segment(5.0), table);
    CHECK(three.positions(0) == doctest::Approx(2.0 - half_wave));
    CHECK(three.positions(1) == doctest::Approx(2.0));
    CHECK(three.positions(2) == doctest::Approx(2.0 + half_wave));

    // Near the feed the grid is pushed inside the segment.
    const auto edge = stage1_min_pathloss(Point3(0.0, 0.0, 0.0), 4, segment(5.0), table);
    CHECK(edge.positions(0) == 0.0);
    CHECK(is_spaced(edge.positions, half_wave, 0.0, 5.0));

    // Exhaustive search over the grid's first position.
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ux(0.0, 5.0), uy(-2.5, 2.5);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Point3 u(ux(rng), uy(rng), 0.0);
        const auto s1 = stage1_min_pathloss(u, 4, segment(5.0), table);
        const double got = array_pathloss_objective(s1.positions, u, table);
        double best = 0.0;
        const double last = 5.0 - 3.0 * half_wave;
        for (long i = 0; i <= 500000; ++i)
        {
            const double first = last * double(i) / 500000.0;
            Eigen::VectorXd x(4);
            for (int n = 0; n < 4; ++n)
                x(n) = first + n * half_wave;
            best = std::max(best, array_pathloss_objective(x, u, table));
        }
        CHECK(got >= best - 1e-9 * best);
    }
    CHECK_THROWS_AS(stage1_min_pathloss(user, 4, {0.0, 0.01, half_wave}, table), InfeasibleError);
}

TEST_CASE("stage 2 phase alignment")
{
    const Point3 user(2.5, 1.0, 0.0);
    const auto one = stage1_min_pathloss(user, 1, segment(5.0), table);
    CHECK(stage2_phase_align(one, user, segment(5.0), table).positions == one.positions);

    // Two pinches already a whole turn apart stay put.
    ArrayPlacement two;
    two.spacing_floor = half_wave;
    two.positions.resize(2);
    two.positions(0) = 2.4;
    const double ref = pinch_phase(2.4, 0.0, user, table);
    double lo = 2.4 + half_wave, hi = 2.5;
    const double goal = ref + 2.0 * std::numbers::pi * std::ceil((pinch_phase(lo, 0.0, user, table) - ref) / (2.0 * std::numbers::pi));
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (pinch_phase(mid, 0.0, user, table) < goal ? lo : hi) = mid;
    }
    two.positions(1) = hi;
    const auto kept = stage2_phase_align(two, user, segment(5.0), table);
    CHECK(std::abs(kept.positions(1) - two.positions(1)) < 1e-12);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ux(0.0, 5.0), uy(-2.5, 2.5);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Point3 u(ux(rng), uy(rng), 0.0);
        for (int N : {2, 4, 8})
        {
            const auto s1 = stage1_min_pathloss(u, N, segment(5.0), table);
            const auto s2 = stage2_phase_align(s1, u, segment(5.0), table);
            REQUIRE_FALSE(s2.degraded);
            CHECK(is_spaced(s2.positions, half_wave, 0.0, 5.0, 0.0));
            const double coherent = channel_array_magnitude_bound(s2.positions, u, table, Attenuation::ignore);
            CHECK(std::abs(channel_array(s2.positions, u, table, Attenuation::ignore)) >= 0.998 * coherent);
            CHECK(s2.achieved_snr >= s1.achieved_snr);
        }
    }
}

TEST_CASE("time allocation")
{
    Eigen::VectorXd single(1);
    single << 50.0;
    CHECK(allocate_time(single, 2.0).shares.t(0) == 2.0);

    Eigen::VectorXd pair(2);
    pair << 30.0, 30.0;
    const auto sym = allocate_time(pair, 1.0);
    CHECK(sym.shares.t(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sym.shares.t(1) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> la(0.0, 6.0);
    for (int trial = 0; trial < 30; ++trial)
    {
        Eigen::VectorXd a(3);
        for (auto &v : a)
            v = std::pow(10.0, la(rng));
        const auto alloc = allocate_time(a, 1.0);
        CHECK(alloc.shares.t.sum() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK((alloc.shares.t.array() >= 0).all());
        for (int m = 0; m < 3; ++m)
            CHECK(std::abs(time_share_rate(a(m), alloc.shares.t(m)) - alloc.rate) <= 1e-8 * alloc.rate);
        const double oracle = maxmin_level_oracle(a, 1.0);
        CHECK(std::abs(alloc.rate - oracle) <= 2e-8 * oracle);
    }
}

TEST_CASE("max-min TDMA with an array")
{
    const Point3 solo(2.0, 1.0, 0.0);
    const auto one = tdma_array_maxmin({solo}, 4, segment(5.0), 1.0, table);
    const auto ref = stage2_phase_align(stage1_min_pathloss(solo, 4, segment(5.0), table), solo, segment(5.0), table);
    CHECK(one.shares.t(0) == 1.0);
    CHECK(one.placement.positions == ref.positions);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ux(0.0, 5.0), uy(-2.5, 2.5);
    for (int trial = 0; trial < 5; ++trial)
    {
        std::vector<Point3> users;
        for (int m = 0; m < 3; ++m)
            users.emplace_back(ux(rng), uy(rng), 0.0);
        const auto r = tdma_array_maxmin(users, 4, segment(5.0), 1.0, table);
        check_monotone(r.history);
        CHECK(is_spaced(r.placement.positions, half_wave, 0.0, 5.0));
        CHECK(r.shares.t.sum() == doctest::Approx(1.0).epsilon(1e-9));

        // Weakly better than time allocation alone on any aligned start.
        for (const auto &u : users)
        {
            const auto fixed = stage2_phase_align(stage1_min_pathloss(u, 4, segment(5.0), table), u, segment(5.0), table);
            const double base = allocate_time(tdma_effective_snrs(fixed.positions, users, table), 1.0).rate;
            CHECK(r.min_rate >= base * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("NOMA with an array")
{
    const Point3 p(1.0, 2.0, 0.0), s(4.0, -1.5, 0.0);
    const auto closed = cr_noma_two_user(p, s, 1.0, table, equal_noise);
    const auto one = noma_array_bcd(p, s, 1, segment(5.0), 1.0, table, equal_noise);
    CHECK(std::abs(one.secondary_rate - closed.secondary_rate) <= 1e-4 * closed.secondary_rate);

    const auto tiny = noma_array_bcd(p, s, 4, segment(5.0), 1e-9, table, equal_noise);
    CHECK(tiny.alpha_p < 1e-6);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(0.0, 5.0), uy(-2.5, 2.5);
    for (int trial = 0; trial < 5; ++trial)
    {
        const Point3 pu(ux(rng), uy(rng), 0.0), su(ux(rng), uy(rng), 0.0);
        const auto r = noma_array_bcd(pu, su, 4, segment(5.0), 0.1, table, equal_noise);
        check_monotone(r.history);
        CHECK(r.alpha_p + r.alpha_s == doctest::Approx(1.0));
        CHECK(is_spaced(r.placement.positions, half_wave, 0.0, 5.0));

        const double N = 4.0, P = table.transmit_power(), sig = table.noise_power();
        const double gp = std::norm(channel_array(r.placement.positions, pu, table, Attenuation::ignore));
        const double gs = std::norm(channel_array(r.placement.positions, su, table, Attenuation::ignore));
        const double sinr_p = r.alpha_p * P * gp / (r.alpha_s * P * gp + N * sig);
        const double sinr_sic = r.alpha_p * P * gs / (r.alpha_s * P * gs + N * sig);
        CHECK(sinr_p >= 0.1 * (1.0 - 1e-9));
        CHECK(sinr_sic >= 0.1 * (1.0 - 1e-9));
        if (r.alpha_p < 1.0)
            CHECK(std::min(std::abs(sinr_p - 0.1), std::abs(sinr_sic - 0.1)) <= 1e-9 * 0.1);
    }
}

TEST_CASE("NOMA secondary rate grows with the number of pinches")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(0.0, 5.0), uy(-2.5, 2.5);
    std::vector<double> mean(4, 0.0);
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial)
    {
        const Point3 p(ux(rng), uy(rng), 0.0), s(ux(rng), uy(rng), 0.0);
        for (int k = 0; k < 4; ++k)
            mean[k] += noma_array_bcd(p, s, 2 * (k + 1), segment(5.0), 0.1, table, equal_noise).secondary_rate / trials;
    }
    for (int k = 1; k < 4; ++k)
        CHECK(mean[k] >= mean[k - 1]);
}
