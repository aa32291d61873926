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

#include "pinch/coop.hpp"

#include <cmath>
#include <stdexcept>

namespace pinch {

std::string_view to_string(CoopScheme s)
{
    switch (s)
    {
    case CoopScheme::bs_only: return "BS_only";
    case CoopScheme::sd: return "SD";
    case CoopScheme::scd: return "SCD";
    case CoopScheme::fcd: return "FCD";
    }
    return "?";
}

void CoopConfig::validate() const
{
    if (bs_antennas < 1 || waveguides < 1 || pinches < 1)
        throw std::invalid_argument("Antenna, waveguide and pinch counts must be at least one.");
    if (!(bs_distance > 0) || !(pinch_distance > 0))
        throw std::invalid_argument("Link distances must be positive.");
    if (!(bs_exponent > 0) || !(pinch_exponent > 0))
        throw std::invalid_argument("Path-loss exponents must be positive.");
    if (!(transmit_snr >= 0))
        throw std::invalid_argument("Transmit SNR cannot be negative.");
}

double coop_snr(CoopScheme scheme, const CoopConfig &c, double eta)
{
    c.validate();
    const double nb = c.bs_antennas, p = c.waveguides, n = c.pinches;
    const double lb = std::pow(c.bs_distance, c.bs_exponent);
    const double lg = std::pow(c.pinch_distance, c.pinch_exponent);
    switch (scheme)
    {
    case CoopScheme::bs_only: return eta * nb * c.transmit_snr / lb;
    case CoopScheme::sd: return (eta * nb * nb / (lb * (nb + p)) + eta * n * p / (lg * (nb + p))) * c.transmit_snr;
    case CoopScheme::scd:
        return (eta * nb * nb / (lb * (nb + p)) + eta * n * p * p / (lg * (nb + p))) * c.transmit_snr;
    case CoopScheme::fcd: return (eta * nb / lb + eta * n * p / lg) * c.transmit_snr;
    }
    throw std::invalid_argument("Unknown cooperation scheme.");
}

CoopScheme coop_best_scheme(const CoopConfig &c, double eta)
{
    CoopScheme best = CoopScheme::fcd;
    double value = coop_snr(best, c, eta);
    for (CoopScheme s : {CoopScheme::scd, CoopScheme::sd, CoopScheme::bs_only})
    {
        const double v = coop_snr(s, c, eta);
        if (v > value)
        {
            best = s;
            value = v;
        }
    }
    return best;
}

} // namespace pinch
