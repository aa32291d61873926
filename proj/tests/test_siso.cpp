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

#include "pinch/siso.hpp"

using namespace pinch;

namespace {

const SystemConfig table = SystemConfig::table_defaults();

// Brute-force SNR maximisation over [0, D] on a 1e-3 m grid.
std::pair<double, double> grid_search(const Point3 &user, const SystemConfig &cfg, double D)
{
    double best_x = 0.0, best = -1.0;
    const long steps = std::lround(D / 1e-3);
    for (long i = 0; i <= steps; ++i)
    {
        const double x = double(i) * 1e-3;
        const double v = std::norm(channel_single(x, user, cfg));
        if (v > best)
        {
            best = v;
            best_x = x;
        }
    }
    return {best_x, cfg.transmit_power() * best / cfg.noise_power()};
}

} // namespace

TEST_CASE("closed-form placement limits")
{
    const Point3 user(30.0, 3.0, 0.0);
    CHECK(optimal_position_siso(user, table.with_attenuation(0.0), 80.0).x_star == 30.0);

    // alpha -> 0: the interior branch tends to the projection.
    CHECK(optimal_position_siso(user, table.with_attenuation(1e-9), 80.0).x_star == doctest::Approx(30.0).epsilon(1e-7));

    const Point3 centered(50.0, 0.0, 0.0);
    CHECK(optimal_position_siso(centered, table, 80.0).x_star == doctest::Approx(49.7695112494098).epsilon(1e-12));

    // Heavy attenuation: C = 25 exceeds 1/(4 alpha^2) once alpha > 0.1.
    const auto lossy = table.with_attenuation(0.2);
    CHECK(optimal_position_siso(Point3(3.0, 0.0, 0.0), lossy, 10.0).x_star == 0.0);

    CHECK_THROWS_AS(optimal_position_siso(Point3(-1.0, 0.0, 0.0), table, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_position_siso(Point3(11.0, 0.0, 0.0), table, 10.0), std::invalid_argument);
}

TEST_CASE("closed-form placement matches a 1e-3 m grid search")
{
    std::mt19937_64 rng(2024);
    for (double dv : {5.0, 10.0})
    {
        const auto cfg = table.with_height(dv);
        std::uniform_real_distribution<double> ux(0.0, 80.0), uy(-40.0, 40.0);
        for (int i = 0; i < 60; ++i)
        {
            const Point3 user(ux(rng), uy(rng), 0.0);
            const auto closed = optimal_position_siso(user, cfg, 80.0);
            const auto [gx, gsnr] = grid_search(user, cfg, 80.0);
            CHECK(std::abs(closed.x_star - gx) <= 2e-3);
            CHECK(closed.snr >= gsnr * (1.0 - 1e-6));
            CHECK(closed.rate == doctest::Approx(std::log2(1.0 + closed.snr)));
        }
    }
}

TEST_CASE("feed-point branch compares against the interior stationary point")
{
    // xbar beyond the larger root of alpha xbar^2 - xbar + alpha C: the case split
    // says x = 0 but the interior stationary point has far lower path loss.
    const Point3 far(120.0, 0.0, 0.0);
    const auto r = optimal_position_siso(far, table, 130.0);
    const auto [gx, gsnr] = grid_search(far, table, 130.0);
    CHECK(std::abs(r.x_star - gx) <= 2e-3);
    CHECK(r.snr >= gsnr * (1.0 - 1e-6));
}

TEST_CASE("placement drifts toward the feed as the user leaves the waveguide")
{
    double previous = 1e9;
    for (double y = 0.0; y <= 40.0; y += 0.5)
    {
        const double x = optimal_position_siso(Point3(40.0, y, 0.0), table, 80.0).x_star;
        CHECK(x <= previous);
        previous = x;
    }
}

TEST_CASE("rate-gap formulas")
{
    CHECK(expected_rate_gap_los(table.with_attenuation(0.0), 20.0).gap == 0.0);
    CHECK(expected_rate_gap_los(table, 20.0).gap == doctest::Approx(0.0071230663152157753).epsilon(1e-12));

    const auto tall = table.with_height(10.0);
    CHECK(max_region_side(tall, 0.1) == doctest::Approx(92.88).epsilon(0.01 / 92.88));
    CHECK(max_region_side(table, 0.1) == doctest::Approx(97.607522547415448).epsilon(1e-12));
    CHECK(max_region_side(table, 0.1) > max_region_side(tall, 0.1));

    // Budget exactly consumed by the height term.
    const double a = table.attenuation();
    const double eps = a * a * 25.0 / std::numbers::ln2;
    CHECK(max_region_side(table, eps) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(max_region_side(table, eps * 0.5), InfeasibleError);
    CHECK_THROWS_AS(max_region_side(table.with_attenuation(0.0), 0.1), std::invalid_argument);

    CHECK(asymptotic_rate_gap(0.0, 0.1) == 0.0);
    CHECK(asymptotic_rate_gap(0.0092, 0.1) == doctest::Approx(0.0012).epsilon(0.05));
    CHECK(asymptotic_rate_gap(0.0184, 0.1) == doctest::Approx(4.0 * asymptotic_rate_gap(0.0092, 0.1)));
    CHECK_THROWS_AS(asymptotic_rate_gap(0.0092, 0.0), std::invalid_argument);
}

TEST_CASE("blockage rate gap")
{
    CHECK(expected_rate_gap_blockage(table.with_attenuation(0.0), BlockageModel(0.1), 20.0).gap == 0.0);

    const double asym = asymptotic_rate_gap(0.0092, 0.1);
    CHECK(expected_rate_gap_blockage(table, BlockageModel(0.1), 1e7).gap == doctest::Approx(asym).epsilon(1e-4));

    // Small beta recovers the LoS expression.
    for (double D : {10.0, 20.0, 40.0})
    {
        const double los = expected_rate_gap_los(table, D).gap;
        CHECK(std::abs(expected_rate_gap_blockage(table, BlockageModel(1e-5), D).gap - los) <= 0.01 * los);
    }

    double previous = 1e9;
    for (double beta = 0.005; beta <= 1.0; beta += 0.005)
    {
        const double g = expected_rate_gap_blockage(table, BlockageModel(beta), 30.0).gap;
        CHECK(g <= previous * (1.0 + 1e-12));
        previous = g;
    }
    CHECK_THROWS_AS(BlockageModel(0.0), std::invalid_argument);
}

TEST_CASE("Monte Carlo rate loss agrees with the LoS formula")
{
    std::mt19937_64 rng(77);
    for (double D : {10.0, 20.0, 40.0})
    {
        std::uniform_real_distribution<double> ux(0.0, D), uy(-D / 2, D / 2);
        double acc = 0.0;
        const int trials = 20000;
        for (int i = 0; i < trials; ++i)
        {
            const Point3 user(ux(rng), uy(rng), 0.0);
            const double best = optimal_position_siso(user, table, D).rate;
            const double naive = std::log2(1.0 + siso_snr(user.x(), user, table));
            acc += best - naive;
        }
        const double mc = acc / trials;
        const double formula = expected_rate_gap_los(table, D).gap;
        CHECK(std::abs(mc - formula) <= 0.2 * formula);
    }
}
