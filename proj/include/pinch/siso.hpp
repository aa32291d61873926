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

// Single pinch, single user: closed-form placement and the analytic rate loss
// incurred when the placement ignores in-waveguide attenuation.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pinch/channel.hpp"
#include "pinch/types.hpp"

namespace pinch {

template <typename Scalar>
struct BasicSisoPlacement
{
    Scalar x_star;
    Scalar snr;
    Scalar rate;
};
using SisoPlacement = BasicSisoPlacement<double>;

enum class GapRegime
{
    los,
    blockage,
    asymptotic
};

struct RateGapReport
{
    double gap;
    GapRegime regime;
};

/// Received SNR of a single pinch at x serving `user` with the configured
/// transmit and noise power.
template <typename Scalar>
Scalar siso_snr(Scalar x, const Vec3<Scalar> &user, const BasicSystemConfig<Scalar> &cfg,
                Attenuation att = Attenuation::include)
{
    return cfg.transmit_power() * std::norm(channel_single(x, user, cfg, att)) / cfg.noise_power();
}

/// Placement maximising the received SNR over 0 <= x <= D.
///
/// The path-loss/attenuation product ((x - xbar)^2 + C) e^{2 alpha x} has its
/// only interior minimum at xbar + (-1 + sqrt(1 - 4 alpha^2 C)) / (2 alpha);
/// the feed point wins when C >= xbar/alpha - xbar^2. For users farther along
/// the waveguide than the larger root of alpha xbar^2 - xbar + alpha C the
/// case split alone would select the feed point although the interior point is
/// better, so both candidates are compared there.
template <typename Scalar>
BasicSisoPlacement<Scalar> optimal_position_siso(const Vec3<Scalar> &user, const BasicSystemConfig<Scalar> &cfg,
                                                 Scalar region_side)
{
    const Scalar xbar = user.x();
    if (!(xbar >= 0) || !(xbar <= region_side))
        throw std::invalid_argument("User projection must lie within [0, D].");
    const Scalar alpha = cfg.attenuation();
    const Scalar C = user.y() * user.y() + cfg.height() * cfg.height();

    Scalar x_star;
    if (alpha == Scalar(0))
    {
        x_star = xbar;
    }
    else
    {
        const Scalar four_a2 = Scalar(4) * alpha * alpha;
        const Scalar threshold = Scalar(1) / four_a2 - (Scalar(2) * alpha * xbar - 1) * (Scalar(2) * alpha * xbar - 1) / four_a2;
        const Scalar disc = Scalar(1) - four_a2 * C;
        if (C >= threshold)
        {
            x_star = 0;
            if (disc >= 0)
            {
                const Scalar interior = xbar + (Scalar(-1) + std::sqrt(disc)) / (Scalar(2) * alpha);
                if (interior > 0)
                {
                    auto cost = [&](Scalar x)
                    { return ((x - xbar) * (x - xbar) + C) * std::exp(Scalar(2) * alpha * x); };
                    if (cost(interior) < cost(Scalar(0)))
                        x_star = interior;
                }
            }
        }
        else
        {
            if (disc < 0)
                throw std::logic_error("Interior placement branch reached with negative discriminant.");
            x_star = xbar + (Scalar(-1) + std::sqrt(disc)) / (Scalar(2) * alpha);
        }
    }
    x_star = std::clamp(x_star, Scalar(0), region_side);
    const Scalar snr = siso_snr(x_star, user, cfg);
    return {x_star, snr, Scalar(std::log2(1 + snr))};
}

/// Expected rate loss from ignoring attenuation, LoS users uniform on a
/// D x D square: (alpha^2 / ln 2)(D^2 / 12 + d_v^2).
inline RateGapReport expected_rate_gap_los(const SystemConfig &cfg, double region_side)
{
    if (!(region_side > 0))
        throw std::invalid_argument("Region side must be positive.");
    const double a = cfg.attenuation();
    const double gap = a * a / std::numbers::ln2 *
                       (region_side * region_side / 12.0 + cfg.height() * cfg.height());
    return {gap, GapRegime::los};
}

/// Largest square side keeping the expected LoS rate loss below `epsilon`.
inline double max_region_side(const SystemConfig &cfg, double epsilon)
{
    if (!(epsilon > 0))
        throw std::invalid_argument("Rate-loss budget must be positive.");
    const double a = cfg.attenuation();
    if (!(a > 0))
        throw std::invalid_argument("Attenuation must be positive for a finite region bound.");
    const double slack = epsilon * std::numbers::ln2 / (a * a) - cfg.height() * cfg.height();
    if (slack < 0)
        throw InfeasibleError("Waveguide height alone exceeds the rate-loss budget.");
    return std::sqrt(12.0 * slack);
}

inline double asymptotic_rate_gap(double alpha, double beta)
{
    if (!(alpha >= 0))
        throw std::invalid_argument("Attenuation cannot be negative.");
    if (!(beta > 0))
        throw std::invalid_argument("Blockage density must be positive.");
    return alpha * alpha / (beta * std::numbers::ln2);
}

/// Expected rate loss from ignoring attenuation under probabilistic blockage.
inline RateGapReport expected_rate_gap_blockage(const SystemConfig &cfg, const BlockageModel &blockage,
                                                double region_side)
{
    if (!(region_side > 0))
        throw std::invalid_argument("Region side must be positive.");
    const double beta = blockage.density;
    const double dv = cfg.height();
    const double root = std::sqrt(1.0 + beta * dv * dv);
    const double bracket = 1.0 - 2.0 / (region_side * std::sqrt(beta) * root) *
                                     std::atan(std::sqrt(beta) * (region_side / 2.0) / root);
    return {asymptotic_rate_gap(cfg.attenuation(), beta) * bracket, GapRegime::blockage};
}

} // namespace pinch
