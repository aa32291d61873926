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

#include <cstring>
#include <random>

#include "pinch/channel.hpp"

using namespace pinch;

namespace {

const SystemConfig table = SystemConfig::table_defaults();

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("system config derives wavelengths and Friis constant")
{
    CHECK(rel(table.wavelength() * table.carrier_frequency(), speed_of_light) < 1e-9);
    CHECK(rel(table.guided_wavelength(), table.wavelength() / 1.4) < 1e-15);
    const double four_pi_fc = 4.0 * std::numbers::pi * 28e9;
    CHECK(rel(table.friis(), speed_of_light * speed_of_light / (four_pi_fc * four_pi_fc)) < 1e-12);
    CHECK(rel(table.noise_power(), 1e-10) < 1e-12);
    CHECK(rel(table.transmit_power(), 1.0) < 1e-12);

    CHECK_THROWS_AS(SystemConfig(0.0, 1.4, 0.0, 5.0, 1e-10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemConfig(28e9, 0.9, 0.0, 5.0, 1e-10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemConfig(28e9, 1.4, -1e-3, 5.0, 1e-10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemConfig(28e9, 1.4, 0.0, 0.0, 1e-10, 1.0), std::invalid_argument);
}

TEST_CASE("waveguide layout spreads feeds across the region")
{
    WaveguideLayout four(4, 5.0, 6.0, table.wavelength());
    CHECK(four.spacing() == doctest::Approx(2.0));
    CHECK(four.offset(0) == doctest::Approx(-3.0));
    CHECK(four.offset(3) == doctest::Approx(3.0));
    CHECK_FALSE(four.narrow_spacing());
    CHECK(four.feed_point(1).z() == 5.0);

    WaveguideLayout one(1, 5.0, 6.0, table.wavelength());
    CHECK(one.offset(0) == 0.0);

    WaveguideLayout tight(3, 5.0, 0.1, table.wavelength());
    CHECK(tight.narrow_spacing());
    CHECK_THROWS_AS(WaveguideLayout(0, 5.0, 6.0, 0.01), std::invalid_argument);
}

TEST_CASE("in-waveguide gain")
{
    CHECK(in_waveguide_gain(0.0, table) == std::complex<double>(1.0, 0.0));

    const auto lossless = table.with_attenuation(0.0);
    const auto turn = in_waveguide_gain(lossless.guided_wavelength(), lossless);
    CHECK(std::abs(turn - std::complex<double>(1.0, 0.0)) < 1e-12);

    // e^{-0.92} evaluated in 40-digit arithmetic.
    CHECK(rel(std::abs(in_waveguide_gain(100.0, table)), 0.39851904108451417) < 1e-14);
    CHECK(std::abs(in_waveguide_gain(100.0, table)) <= 1.0);

    CHECK_THROWS_AS(in_waveguide_gain(-1.0, table), std::invalid_argument);
}

TEST_CASE("free-space gain")
{
    const Point3 user(3.0, -1.0, 0.0);
    const Point3 above(3.0, -1.0, table.height());
    CHECK(rel(std::abs(free_space_gain(above, user, table)), std::sqrt(table.friis()) / table.height()) < 1e-14);

    const Point3 a(0.0, 0.0, 2.0), b(0.0, 0.0, 4.0), origin(0.0, 0.0, 0.0);
    CHECK(rel(std::abs(free_space_gain(b, origin, table)), 0.5 * std::abs(free_space_gain(a, origin, table))) < 1e-14);

    // (lambda/(4 pi))/5 at 28 GHz, 40-digit reference.
    const Point3 five(0.0, 0.0, 5.0);
    CHECK(rel(std::abs(free_space_gain(five, origin, table)), 1.7040518425846222e-4) < 1e-13);

    CHECK_THROWS_AS(free_space_gain(origin, origin, table), std::domain_error);
}

TEST_CASE("single-pinch channel")
{
    const auto lossless = table.with_attenuation(0.0);
    const Point3 user(12.5, 0.0, 0.0);
    CHECK(rel(std::abs(channel_single(12.5, user, lossless)), std::sqrt(table.friis()) / table.height()) < 1e-14);

    const Point3 u2(10.0, 2.0, 0.0);
    const auto with = channel_single(10.0, u2, table, Attenuation::include);
    const auto without = channel_single(10.0, u2, table, Attenuation::ignore);
    CHECK(rel(std::abs(with), std::abs(without) * std::exp(-0.092)) < 1e-14);
    CHECK(std::abs(std::arg(with) - std::arg(without)) < 1e-12);

    // Term-by-term 40-digit evaluation of the two-stage model at (10, 2, 0), pinch at 10 m.
    CHECK(rel(with.real(), -1.4091620054260012e-4) < 1e-9);
    CHECK(rel(with.imag(), 3.1116235434502792e-5) < 1e-9);
}

TEST_CASE("lossless channel magnitude is symmetric about the user projection")
{
    const auto lossless = table.with_attenuation(0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> xs(5.0, 45.0), ys(-10.0, 10.0), off(0.0, 5.0);
    for (int i = 0; i < 100; ++i)
    {
        const Point3 user(xs(rng), ys(rng), 0.0);
        const double t = off(rng);
        CHECK(rel(std::abs(channel_single(user.x() + t, user, lossless)),
                  std::abs(channel_single(user.x() - t, user, lossless))) < 1e-12);
    }
}

TEST_CASE("array channel")
{
    const Point3 user(7.0, 1.5, 0.0);
    Eigen::VectorXd one(1);
    one << 6.2;
    CHECK(channel_array(one, user, table) == channel_single(6.2, user, table));

    Eigen::VectorXd bad(2);
    bad << 3.0, 3.0;
    CHECK_THROWS_AS(channel_array(bad, user, table), std::invalid_argument);

    // Two equal-magnitude terms half a turn apart cancel. With alpha = 0 and n_eff
    // chosen so lambda_g/2 separates two pinches mirrored about the user projection,
    // the free-space phases are equal and the in-waveguide phases differ by pi.
    const auto lossless = table.with_attenuation(0.0);
    const double half = lossless.guided_wavelength() / 2.0;
    Eigen::VectorXd mirrored(2);
    mirrored << user.x() - half / 2.0, user.x() + half / 2.0;
    CHECK(std::abs(channel_array(mirrored, user, lossless)) < 1e-12 * channel_array_magnitude_bound(mirrored, user, lossless));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(0.0, 20.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> raw(4);
        for (auto &r : raw)
            r = pos(rng);
        std::sort(raw.begin(), raw.end());
        Eigen::VectorXd layout = Eigen::Map<Eigen::VectorXd>(raw.data(), 4);
        const double bound = channel_array_magnitude_bound(layout, user, table);
        CHECK(std::abs(channel_array(layout, user, table)) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("aligned array magnitude equals the sum of term magnitudes")
{
    // Place each pinch where its phase is a whole number of turns from the first.
    const Point3 user(10.0, 0.0, 0.0);
    Eigen::VectorXd x(4);
    x(0) = 9.99;
    const double target = pinch_phase(x(0), 0.0, user, table);
    for (int n = 1; n < 4; ++n)
    {
        double lo = x(n - 1) + 0.004, hi = lo;
        const double k = std::ceil((pinch_phase(lo, 0.0, user, table) - target) / (2 * std::numbers::pi));
        const double goal = target + 2 * std::numbers::pi * k;
        while (pinch_phase(hi, 0.0, user, table) < goal)
            hi += 0.001;
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (pinch_phase(mid, 0.0, user, table) < goal ? lo : hi) = mid;
        }
        x(n) = 0.5 * (lo + hi);
    }
    const double bound = channel_array_magnitude_bound(x, user, table);
    CHECK(rel(std::abs(channel_array(x, user, table)), bound) < 1e-12);
}

TEST_CASE("multi-waveguide channel")
{
    const auto lossless = table.with_attenuation(0.0);
    WaveguideLayout single(1, table.height(), 10.0, table.wavelength());
    const Point3 user(4.0, 1.0, 0.0);
    Eigen::VectorXd x1(1);
    x1 << 3.3;
    CHECK(channel_multi_waveguide(single, x1, user, table)(0) == channel_single(3.3, user, table));

    WaveguideLayout three(3, table.height(), 10.0, table.wavelength());
    const Point3 on_plane(6.0, three.offset(2), 0.0);
    Eigen::VectorXd x3(3);
    x3 << 1.0, 2.0, 6.0;
    CHECK(rel(std::abs(channel_multi_waveguide(three, x3, on_plane, lossless)(2)),
              std::sqrt(table.friis()) / table.height()) < 1e-14);

    WaveguideLayout two(2, table.height(), 8.0, table.wavelength());
    const Point3 center(5.0, 0.0, 0.0);
    Eigen::VectorXd x2(2);
    x2 << 5.0, 5.0;
    const auto h = channel_multi_waveguide(two, x2, center, table);
    CHECK(rel(std::abs(h(0)), std::abs(h(1))) < 1e-14);

    std::vector<Eigen::VectorXd> lists(2, Eigen::VectorXd::Constant(1, 5.0));
    CHECK(channel_multi_waveguide(two, lists, center, table) == h);
    lists.pop_back();
    CHECK_THROWS_AS(channel_multi_waveguide(two, lists, center, table), std::invalid_argument);
}

TEST_CASE("channel operations are pure")
{
    const Point3 user(8.123, -2.5, 0.0);
    const auto a = channel_single(7.77, user, table);
    const auto b = channel_single(7.77, user, table);
    CHECK(std::memcmp(&a, &b, sizeof(a)) == 0);
}

TEST_CASE("rate from SNR")
{
    CHECK(rate_from_snr(0.0) == 0.0);
    CHECK(rate_from_snr(1.0) == 1.0);
    CHECK(rate_from_snr(3.0) == 2.0);
    CHECK_THROWS_AS(rate_from_snr(-0.5), std::invalid_argument);
}
