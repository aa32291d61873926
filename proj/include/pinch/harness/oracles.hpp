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

// Brute-force reference checks: grid searches, bisection references and
// algebraic orderings, each compared against the library's solvers.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pinch::harness {

struct OracleCheck
{
    std::string scope;
    std::string name;
    double tolerance = 0.0; // bound on `worst`
    double worst = 0.0;     // largest observed violation measure
    bool passed = false;
    bool informational = false; // statistic only, never fails
    std::string detail;
};

/// core-model, siso-placement, multiuser-single, array-waveguide,
/// multi-waveguide, applications.
const std::vector<std::string_view> &oracle_scopes();

struct OracleOptions
{
    double effort = 1.0; // scales instance counts
    std::uint64_t seed = 2024;
};

/// Every check in `scope`; an empty scope runs the full suite.
std::vector<OracleCheck> run_oracles(std::string_view scope = {}, const OracleOptions &opt = {});

// Individual checks with explicit instance counts.
OracleCheck check_siso_closed_form(int users, std::uint64_t seed);
OracleCheck check_rate_gap_monte_carlo(double side, int trials, std::uint64_t seed);
OracleCheck check_tdma_closed_form(int instances, std::uint64_t seed);
OracleCheck check_cr_noma(int instances, std::uint64_t seed);
OracleCheck check_phase_alignment(int users, std::uint64_t seed);
OracleCheck check_tdma_array_monotone(int instances, std::uint64_t seed);
OracleCheck check_noma_array_monotone(int instances, std::uint64_t seed);
OracleCheck check_wmmse_monotone(int instances, int waveguides, double side, std::uint64_t seed);
OracleCheck check_coop(int configs, std::uint64_t seed);

} // namespace pinch::harness
