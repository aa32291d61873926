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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pinch/harness/config.hpp"
#include "pinch/harness/experiment.hpp"
#include "pinch/harness/oracles.hpp"
#include "pinch/types.hpp"

namespace {

using namespace pinch;
using namespace pinch::harness;

enum Exit
{
    ok = 0,
    failure = 1,
    usage = 2,
    infeasible = 3,
    oracle_failed = 4,
};

int report_error(std::string_view kind, std::string_view command, std::string_view message, int code)
{
    nlohmann::json line{{"error", kind}, {"command", command}, {"message", message}};
    std::cerr << line.dump() << '\n';
    return code;
}

void print_summary(const std::vector<ExperimentRecord> &records)
{
    for (const auto &p : summarize(records))
        std::cout << "sweep=" << format_real(p.sweep) << " scheme=" << p.scheme << " metric=" << p.metric
                  << " mean=" << format_real(p.mean) << " samples=" << p.samples << '\n';
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Simulator for dielectric-waveguide pinching-antenna systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 1;
    std::optional<int> trials;
    std::string out;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "TOML-style configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "64-bit seed for the trial streams");
    app.add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "CSV output path");
    app.add_option("--set", overrides, "Override a configuration key: --set section.key=value");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"place-siso", "Closed-form single-pinch placement"},
        {"tdma", "Max-min TDMA with one pinch"},
        {"noma2", "Two-user cognitive-radio NOMA with one pinch"},
        {"array", "TDMA and NOMA with a pinch array on one waveguide"},
        {"mimo", "Multi-waveguide WMMSE beamforming and placement"},
        {"isac", "Sensing-constrained placement and beamforming"},
        {"coop", "Base station and pinching-antenna cooperation SNRs"},
    };
    for (const auto &[name, help] : commands)
        app.add_subcommand(name, help)->fallthrough();

    std::string figure;
    auto *rep = app.add_subcommand("reproduce", "Reproduce a figure as CSV and gnuplot columns")->fallthrough();
    rep->add_option("figure", figure, "siso_rate | noma_vs_tdma | rate_vs_n | sumrate_vs_power | isac_tradeoff")
        ->required();

    std::string scope;
    double effort = 1.0;
    auto *orc = app.add_subcommand("oracles", "Run the brute-force reference checks")->fallthrough();
    orc->add_option("--scope", scope,
                    "core-model | siso-placement | multiuser-single | array-waveguide | multi-waveguide | "
                    "applications (default: all)");
    orc->add_option("--effort", effort, "Scale factor for instance counts")->check(CLI::PositiveNumber);

    app.add_subcommand("keys", "List configuration keys and defaults")->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    Config config;
    try
    {
        if (!config_path.empty())
            config.load_file(config_path);
        config.apply_environment();
        for (const auto &kv : overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + kv + "'.");
            config.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        (void)config.system();
    }
    catch (const std::exception &e)
    {
        return report_error("config", command, e.what(), usage);
    }

    try
    {
        if (command == "keys")
        {
            for (const auto &k : config_keys())
                std::cout << k.name << " = \"" << k.default_value << "\"  # " << k.help << "  ["
                          << Config::environment_name(k.name) << "]\n";
            return ok;
        }
        if (command == "reproduce")
        {
            const auto r = reproduce(figure, config, seed, trials, out);
            print_summary(r.records);
            std::cout << "csv=" << r.csv.string() << " columns=" << r.columns.string() << '\n';
            return ok;
        }
        if (command == "oracles")
        {
            bool all = true;
            for (const auto &c : run_oracles(scope, {effort, seed}))
            {
                const char *tag = c.informational ? "INFO" : c.passed ? "PASS" : "FAIL";
                std::cout << tag << " [" << c.scope << "] " << c.name << ": worst=" << format_real(c.worst)
                          << " tolerance=" << format_real(c.tolerance);
                if (!c.detail.empty())
                    std::cout << " (" << c.detail << ')';
                std::cout << '\n';
                all = all && c.passed;
            }
            if (!all)
                return report_error("oracle_failed", command, "one or more reference checks failed", oracle_failed);
            return ok;
        }

        std::string id = command;
        if (id == "place-siso")
            id = "place_siso";
        const auto records = run_experiment(make_spec(id, config, seed, trials));
        if (!out.empty())
            write_csv(out, records);
        print_summary(records);
        int bad = 0;
        for (const auto &r : records)
            bad += r.metric == "infeasible";
        if (bad > 0)
            return report_error("infeasible", command,
                                std::to_string(bad) + " infeasible outcome(s); see metric 'infeasible'", infeasible);
        return ok;
    }
    catch (const InfeasibleError &e)
    {
        return report_error("infeasible", command, e.what(), infeasible);
    }
    catch (const ConfigError &e)
    {
        return report_error("config", command, e.what(), usage);
    }
    catch (const std::invalid_argument &e)
    {
        return report_error("invalid_argument", command, e.what(), usage);
    }
    catch (const std::exception &e)
    {
        return report_error("failure", command, e.what(), failure);
    }
}
