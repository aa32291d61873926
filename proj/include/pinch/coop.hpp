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

// Received SNR of a base station cooperating with pinching antennas:
// BS only, standalone (SD), semi-cooperative (SCD) and fully cooperative (FCD).

#pragma once

#include <array>
#include <string_view>

namespace pinch {

enum class CoopScheme
{
    bs_only,
    sd,
    scd,
    fcd
};

inline constexpr std::array<CoopScheme, 4> all_coop_schemes{CoopScheme::bs_only, CoopScheme::sd, CoopScheme::scd,
                                                            CoopScheme::fcd};

std::string_view to_string(CoopScheme s);

struct CoopConfig
{
    int bs_antennas = 4;       // N_B
    int waveguides = 2;        // P
    int pinches = 4;           // N per waveguide
    double bs_distance = 50.0; // L_B, m
    double pinch_distance = 5.0; // L_G, m
    double bs_exponent = 3.5;  // xi_B
    double pinch_exponent = 2.0; // xi_P
    double transmit_snr = 1e10; // gamma tilde

    void validate() const;
};

/// Closed-form expected received SNR of `scheme`.
double coop_snr(CoopScheme scheme, const CoopConfig &c, double eta);

/// Scheme with the largest SNR; ties favour FCD, then SCD, then SD.
CoopScheme coop_best_scheme(const CoopConfig &c, double eta);

} // namespace pinch
