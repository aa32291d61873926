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

#include "pinch/multiuser.hpp"

using namespace pinch;

namespace {

const SystemConfig table = SystemConfig::table_defaults();
const NomaNoise equal_noise{table.noise_power(), table.noise_power()};

// Min-rate of the equal-SNR power split at pinch position x.
double tdma_min_rate_at(const std::vector<Point3> &users, double x)
{
    double total = 0.0;
    for (const auto &u : users)
        total += (x - u.x()) * (x - u.x()) + u.y() * u.y() + table.height() * table.height();
    return std::log2(1.0 + table.transmit_power() * table.friis() / (total * table.noise_power())) / double(users.size());
}

} // namespace

TEST_CASE("TDMA closed form: degenerate and symmetric cases")
{
    const auto single = tdma_maxmin_closed_form({Point3(4.0, 2.0, 0.0)}, table, 1.0);
    CHECK(single.x_star == 4.0);
    CHECK(single.powers(0) == doctest::Approx(1.0));

    const auto two = tdma_maxmin_closed_form({Point3(0.0, 7.0, 0.0), Point3(10.0, -1.0, 0.0)}, table, 1.0);
    CHECK(two.x_star == 5.0);
    CHECK(two.powers.sum() == doctest::Approx(1.0));

    CHECK_THROWS_AS(tdma_maxmin_closed_form({}, table, 1.0), std::invalid_argument);
}

TEST_CASE("TDMA closed form equalises SNR and matches a grid search")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(0.0, 20.0), uy(-10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<Point3> users;
        for (int m = 0; m < 3; ++m)
            users.emplace_back(ux(rng), uy(rng), 0.0);
        const auto sol = tdma_maxmin_closed_form(users, table, table.transmit_power());
        CHECK((sol.snrs.maxCoeff() - sol.snrs.minCoeff()) <= 1e-9 * sol.snrs.minCoeff());

        const auto rates = tdma_rates(users, table, sol.x_star, sol.powers);
        CHECK(rates.minCoeff() == doctest::Approx(sol.min_rate).epsilon(1e-12));

        double grid_best = 0.0;
        for (long i = 0; i <= 20000; ++i)
            grid_best = std::max(grid_best, tdma_min_rate_at(users, double(i) * 1e-3));
        CHECK(sol.min_rate >= grid_best - 1e-12);
        CHECK(sol.min_rate - grid_best <= 1e-6);

        // First-order optimality: the summed path loss is stationary at x*.
        double grad = 0.0;
        for (const auto &u : users)
            grad += 2.0 * (sol.x_star - u.x());
        CHECK(std::abs(grad) < 1e-9);
    }
}

TEST_CASE("CR-NOMA: equidistant users meet at the midpoint when SIC binds")
{
    // At 10 dBm both constraints are tight at the optimum and the pinch sits
    // midway between the projections.
    const Point3 p(4.0, 3.0, 0.0), s(12.0, -3.0, 0.0);
    const auto low = table.with_transmit_power(dbm_to_watt(10.0));
    const auto sol = cr_noma_two_user(p, s, 1.0, low, equal_noise);
    CHECK(sol.x_star == doctest::Approx(8.0).epsilon(1e-9));
    CHECK(sol.alpha_p + sol.alpha_s == doctest::Approx(1.0));
    const auto e = noma_evaluate(p, s, low, equal_noise, sol.x_star, sol.alpha_p);
    CHECK(e.primary_sinr == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.sic_sinr == doctest::Approx(1.0).epsilon(1e-9));

    const auto oracle = noma_grid_oracle(p, s, 1.0, low, equal_noise, {}, 0.0, 20.0);
    CHECK(std::abs(oracle.x_star - 8.0) <= 1e-3 + 1e-9);

    // With more power the primary constraint alone binds and the pinch moves
    // toward the secondary user. The objective is flat there, so compare rates.
    const auto high = cr_noma_two_user(p, s, 1.0, table, equal_noise);
    CHECK(high.x_star > 11.0);
    CHECK(high.x_star < 12.0);
    const auto high_oracle = noma_grid_oracle(p, s, 1.0, table, equal_noise, {}, 0.0, 20.0);
    CHECK(std::abs(high_oracle.x_star - high.x_star) <= 0.05);
    CHECK(high_oracle.secondary_rate <= high.secondary_rate + 1e-12);
    CHECK(high.secondary_rate - high_oracle.secondary_rate <= 1e-4);
}

TEST_CASE("CR-NOMA: coincident projections leave the minimum primary share")
{
    // Same x and same lateral distance: both thresholds coincide and the pinch
    // sits above the shared projection with alpha_p at the common threshold.
    const Point3 p(6.0, 2.0, 0.0), s(6.0, -2.0, 0.0);
    const double g = 0.5;
    const auto sol = cr_noma_two_user(p, s, g, table, equal_noise);
    const double A = table.transmit_power() * table.friis();
    const double C = 4.0 + 25.0;
    const double threshold = (A * g + C * table.noise_power() * g) / (A + A * g);
    CHECK(sol.alpha_p == doctest::Approx(threshold).epsilon(1e-12));
    CHECK(sol.x_star == doctest::Approx(6.0));
}

TEST_CASE("CR-NOMA: infeasible when the primary floor is out of reach")
{
    const Point3 p(4.0, 3.0, 0.0), s(12.0, -3.0, 0.0);
    const auto weak = table.with_transmit_power(dbm_to_watt(-40.0));
    CHECK_THROWS_AS(cr_noma_two_user(p, s, 1.0, weak, equal_noise), InfeasibleError);
    CHECK_THROWS_AS(noma_grid_oracle(p, s, 1.0, weak, equal_noise, {0.01, 0.01}, 0.0, 20.0), InfeasibleError);
    CHECK_THROWS_AS(cr_noma_two_user(p, s, 0.0, table, equal_noise), std::invalid_argument);
}

TEST_CASE("CR-NOMA closed form is never beaten by the 2-D grid")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ux(0.0, 20.0), uy(-10.0, 10.0), pw(10.0, 40.0), gm(0.1, 3.0);
    int checked = 0;
    while (checked < 15)
    {
        const Point3 p(ux(rng), uy(rng), 0.0), s(ux(rng), uy(rng), 0.0);
        const double g = gm(rng);
        const auto cfg = table.with_transmit_power(dbm_to_watt(pw(rng)));
        NomaSolution closed;
        try
        {
            closed = cr_noma_two_user(p, s, g, cfg, equal_noise);
        }
        catch (const InfeasibleError &)
        {
            CHECK_THROWS_AS(noma_grid_oracle(p, s, g, cfg, equal_noise, {}, 0.0, 20.0), InfeasibleError);
            continue;
        }
        const auto oracle = noma_grid_oracle(p, s, g, cfg, equal_noise, {}, 0.0, 20.0);
        CHECK(oracle.secondary_rate <= closed.secondary_rate + 1e-12);
        CHECK(closed.secondary_rate - oracle.secondary_rate <= 1e-3);

        const auto e = noma_evaluate(p, s, cfg, equal_noise, closed.x_star, closed.alpha_p);
        CHECK(e.primary_sinr >= g * (1.0 - 1e-9));
        CHECK(e.sic_sinr >= g * (1.0 - 1e-9));
        // One of the two constraints is tight unless alpha_p saturates at 1.
        const bool tight = std::abs(e.primary_sinr - g) <= 1e-9 * g || std::abs(e.sic_sinr - g) <= 1e-9 * g;
        CHECK((tight || closed.alpha_p == 1.0));
        ++checked;
    }
}

TEST_CASE("CR-NOMA with unequal noise matches the grid")
{
    const Point3 p(3.0, -4.0, 0.0), s(15.0, 6.0, 0.0);
    const NomaNoise noise{1e-10, 4e-10};
    const auto closed = cr_noma_two_user(p, s, 1.0, table, noise);
    const auto oracle = noma_grid_oracle(p, s, 1.0, table, noise, {}, 0.0, 20.0);
    CHECK(oracle.secondary_rate <= closed.secondary_rate + 1e-12);
    CHECK(closed.secondary_rate - oracle.secondary_rate <= 1e-3);
}

TEST_CASE("NOMA sum rate beats max-min TDMA for two users")
{
    for (double pdbm : {20.0, 30.0, 40.0})
    {
        const auto cfg = table.with_transmit_power(dbm_to_watt(pdbm));
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> ux(0.0, 20.0), uy(-10.0, 10.0);
        double noma = 0.0, tdma = 0.0;
        int n = 0;
        for (int trial = 0; trial < 2000; ++trial)
        {
            const Point3 p(ux(rng), uy(rng), 0.0), s(ux(rng), uy(rng), 0.0);
            try
            {
                const auto sol = cr_noma_two_user(p, s, 1.0, cfg, equal_noise);
                noma += std::log2(1.0 + sol.primary_sinr) + sol.secondary_rate;
                tdma += 2.0 * tdma_maxmin_closed_form({p, s}, cfg, cfg.transmit_power()).min_rate;
                ++n;
            }
            catch (const InfeasibleError &)
            {
            }
        }
        CHECK(n > 0);
        CHECK(noma > tdma);
    }
}
