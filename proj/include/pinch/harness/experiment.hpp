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

// Monte Carlo experiments. Every trial draws from its own generator seeded by
// (seed, trial), so results do not depend on how trials are spread over
// worker threads; records are emitted in trial order.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pinch/harness/config.hpp"
#include "pinch/harness/csv.hpp"

namespace pinch::harness {

struct ExperimentSpec
{
    std::string id;
    Config config;
    std::string sweep_name;
    std::vector<double> grid;
    int trials = 1;
    std::uint64_t seed = 1;
    unsigned threads = 0; // 0: hardware concurrency

    void validate() const;
};

/// Figure reproductions: siso_rate, noma_vs_tdma, rate_vs_n,
/// sumrate_vs_power, isac_tradeoff.
const std::vector<std::string_view> &figure_ids();

/// Single-scenario commands: place_siso, tdma, noma2, array, mimo, isac, coop.
const std::vector<std::string_view> &command_ids();

int default_trials(std::string_view id);

/// Builds the ExperimentSpec for `id`. Figures fill in their own setup for every key
/// the caller left at its default; `sweep.values` replaces the sweep grid.
ExperimentSpec make_spec(std::string_view id, const Config &config, std::uint64_t seed = 1,
                         std::optional<int> trials = std::nullopt);

std::mt19937_64 trial_stream(std::uint64_t seed, int trial);

/// Records for every (trial, sweep value, scheme, metric). Infeasible
/// figure points contribute a value of zero; commands emit an `infeasible`
/// metric instead.
std::vector<ExperimentRecord> run_experiment(const ExperimentSpec &spec);

struct ReproduceOutput
{
    std::filesystem::path csv;
    std::filesystem::path columns;
    std::vector<ExperimentRecord> records;
};

/// Runs a figure and writes `<out>` (CSV) plus `<out>` with extension .dat
/// (gnuplot columns). An empty `out` selects `<figure>.csv`.
ReproduceOutput reproduce(std::string_view figure, const Config &config, std::uint64_t seed = 1,
                          std::optional<int> trials = std::nullopt, std::filesystem::path out = {});

} // namespace pinch::harness
