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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pinch/harness/config.hpp"
#include "pinch/harness/csv.hpp"
#include "pinch/harness/experiment.hpp"
#include "pinch/harness/oracles.hpp"
#include "pinch/siso.hpp"

using namespace pinch;
using namespace pinch::harness;

namespace {

std::string to_csv(const std::vector<ExperimentRecord> &r)
{
    std::ostringstream s;
    write_csv(s, r);
    return s.str();
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "pinch_test_harness";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("configuration defaults and units")
{
    const Config c;
    const auto sys = c.system();
    const auto ref = SystemConfig::table_defaults();
    CHECK(sys.carrier_frequency() == ref.carrier_frequency());
    CHECK(sys.noise_power() == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(sys.transmit_power() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.attenuation() == 0.0092);
    CHECK(sys.height() == 5.0);
    CHECK(sys.refractive_index() == 1.4);

    Config d;
    d.set("system.transmit_power", "20dBm");
    CHECK(d.number("system.transmit_power") == doctest::Approx(0.1).epsilon(1e-12));
    d.set("system.transmit_power", "2 W");
    CHECK(d.number("system.transmit_power") == 2.0);
    d.set("system.transmit_power", "250 mW");
    CHECK(d.number("system.transmit_power") == doctest::Approx(0.25).epsilon(1e-12));
    d.set("system.transmit_power", "-10 dBW");
    CHECK(d.number("system.transmit_power") == doctest::Approx(0.1).epsilon(1e-12));
    d.set("noma.primary_snr", "10 dB");
    CHECK(d.number("noma.primary_snr") == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(d.set("system.height", "5 dB"), ConfigError);
    CHECK_THROWS_AS(d.set("system.heigth", "5"), ConfigError);
    CHECK_THROWS_AS(d.set("system.height", "five"), ConfigError);
    CHECK_THROWS_AS(d.set("users.count", "-1"), ConfigError);
    CHECK_THROWS_AS(d.set("users.count", "2.5"), ConfigError);
    CHECK_THROWS_AS(d.set("users.positions", "1, 2, 3"), ConfigError);
    d.set("system.height", "-1");
    CHECK_THROWS(d.system());
}

TEST_CASE("configuration text")
{
    Config c;
    c.apply_text(R"(# scenario
[system]
transmit_power = 40 dBm   # strong
height = 3

[users]
positions = "1, 2; 3.5, -4"

[sweep]
values = 1, 2, 4
)");
    CHECK(c.number("system.transmit_power") == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(c.number("system.height") == 3.0);
    const auto p = c.points("users.positions");
    REQUIRE(p.size() == 2);
    CHECK(p[1].x() == 3.5);
    CHECK(p[1].y() == -4.0);
    CHECK(c.list("sweep.values") == std::vector<double>{1, 2, 4});
    CHECK_FALSE(c.is_default("system.height"));
    CHECK(c.is_default("system.attenuation"));

    CHECK_THROWS_AS(c.apply_text("[system]\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(c.apply_text("height 3\n"), ConfigError);
    CHECK_THROWS_AS(c.apply_text("[system\n"), ConfigError);
    CHECK_THROWS_AS(c.load_file("/nonexistent/pinch.toml"), ConfigError);
}

TEST_CASE("environment overrides")
{
    CHECK(Config::environment_name("system.transmit_power") == "PINCH_SYSTEM_TRANSMIT_POWER");
    ::setenv("PINCH_SYSTEM_TRANSMIT_POWER", "20 dBm", 1);
    ::setenv("PINCH_REGION_WIDTH", "7", 1);
    Config c;
    c.apply_environment();
    CHECK(c.number("system.transmit_power") == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(c.number("region.width") == 7.0);
    ::setenv("PINCH_REGION_WIDTH", "wide", 1);
    CHECK_THROWS_AS(c.apply_environment(), ConfigError);
    ::unsetenv("PINCH_SYSTEM_TRANSMIT_POWER");
    ::unsetenv("PINCH_REGION_WIDTH");
}

TEST_CASE("CSV records")
{
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
    const std::vector<ExperimentRecord> r{{"exp", 0, 1.5, "a,b", "rate", 2.0 / 3.0}, {"exp", 1, 2.0, "q\"x", "m", -1e-300}};
    const auto text = to_csv(r);
    CHECK(text.rfind("experiment,trial,sweep,scheme,metric,value\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].scheme == "a,b");
    CHECK(back[1].scheme == "q\"x");
    CHECK(back[0].value == 2.0 / 3.0);
    CHECK(back[1].value == -1e-300);
    CHECK_THROWS(to_csv({{"e", 0, 0.0, "s", "m", std::nan("")}}));

    const auto pts = summarize({{"e", 0, 1.0, "s", "m", 1.0}, {"e", 1, 1.0, "s", "m", 3.0}, {"e", 0, 2.0, "s", "m", 5.0}});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].mean == 2.0);
    CHECK(pts[0].samples == 2);
    CHECK(pts[1].sweep == 2.0);
    std::ostringstream cols;
    write_columns(cols, pts);
    CHECK(cols.str() == "# sweep s:m\n1 2\n2 5\n");
}

TEST_CASE("trial streams")
{
    auto a = trial_stream(7, 3), b = trial_stream(7, 3), c = trial_stream(7, 4), d = trial_stream(8, 3);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
}

TEST_CASE("experiment setup")
{
    const Config c;
    const auto siso = make_spec("siso_rate", c, 1, 1);
    CHECK(siso.grid == std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80});
    CHECK(siso.config.number("region.width") == 10.0);
    CHECK(make_spec("rate_vs_n", c).grid == std::vector<double>{2, 4, 6, 8});
    CHECK(make_spec("rate_vs_n", c).config.number("noma.primary_snr") == doctest::Approx(0.1));
    CHECK(make_spec("sumrate_vs_power", c).config.count("users.count") == 8);
    CHECK(default_trials("siso_rate") == 10000);

    Config wide;
    wide.set("region.width", "30");
    wide.set("sweep.values", "10, 40");
    const auto custom = make_spec("siso_rate", wide);
    CHECK(custom.config.number("region.width") == 30.0);
    CHECK(custom.grid == std::vector<double>{10, 40});

    Config unsorted;
    unsorted.set("sweep.values", "3, 1");
    CHECK_THROWS_AS(make_spec("siso_rate", unsorted), std::invalid_argument);
    CHECK_THROWS_AS(make_spec("nope", c), std::invalid_argument);
    CHECK_THROWS_AS(make_spec("siso_rate", c, 1, 0), std::invalid_argument);
    CHECK(figure_ids().size() == 5);
    CHECK(command_ids().size() == 7);
}

TEST_CASE("experiments are deterministic and complete")
{
    const Config c;
    auto spec = make_spec("siso_rate", c, 99, 1);
    const auto one = run_experiment(spec);
    CHECK(one.size() == spec.grid.size() * 3);

    spec.trials = 40;
    spec.threads = 1;
    const auto serial = to_csv(run_experiment(spec));
    spec.threads = 3;
    CHECK(to_csv(run_experiment(spec)) == serial);
    spec.seed = 100;
    CHECK(to_csv(run_experiment(spec)) != serial);

    auto noma = make_spec("noma_vs_tdma", c, 5, 1);
    CHECK(run_experiment(noma).size() == 5 * 2);

    for (auto id : command_ids())
    {
        if (id == "mimo")
            continue;
        const auto r = run_experiment(make_spec(id, c, 3));
        CHECK_FALSE(r.empty());
        for (const auto &rec : r)
            CHECK(rec.metric != "infeasible");
    }
}

TEST_CASE("commands honour pinned users and report infeasibility")
{
    Config c;
    c.set("users.positions", "2, 1");
    const auto r = run_experiment(make_spec("place_siso", c));
    CHECK(r[0].metric == "x_star");
    const auto closed = optimal_position_siso(Point3(2.0, 1.0, 0.0), c.system(), c.number("region.length"));
    CHECK(r[0].value == closed.x_star);
    CHECK(r[0].value < 2.0);

    c.set("users.positions", "1, 8; 9, -8");
    c.set("system.transmit_power", "-60 dBm");
    c.set("noma.primary_snr", "20 dB");
    const auto weak = run_experiment(make_spec("noma2", c));
    REQUIRE(weak.size() == 1);
    CHECK(weak[0].metric == "infeasible");

    c.set("users.positions", "1, 1");
    CHECK_THROWS_AS(run_experiment(make_spec("noma2", c)), ConfigError);
}

TEST_CASE("reproduce writes CSV and gnuplot columns")
{
    Config c;
    c.set("sweep.values", "10, 20");
    const auto out = scratch("siso.csv");
    const auto r = reproduce("siso_rate", c, 4, 25, out);
    CHECK(r.csv == out);
    CHECK(r.columns.extension() == ".dat");
    std::ifstream csv(r.csv), dat(r.columns);
    std::string first;
    std::getline(csv, first);
    CHECK(first == csv_header);
    std::getline(dat, first);
    CHECK(first == "# sweep pinching_attenuation:rate pinching_no_attenuation:rate fixed_center:rate");
    CHECK(r.records.size() == 25 * 2 * 3);
    CHECK_THROWS_AS(reproduce("tdma", c), std::invalid_argument);
}

TEST_CASE("oracle suite")
{
    CHECK_THROWS_AS(run_oracles("nowhere"), std::invalid_argument);
    const auto core = run_oracles("core-model", {0.2, 1});
    CHECK(core.size() == 4);
    for (const auto &c : core)
    {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
    const auto apps = check_coop(200, 5);
    CHECK(apps.passed);
}
