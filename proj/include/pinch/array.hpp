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

// N pinches on one waveguide. The feed power is split evenly, so every SNR
// below carries a 1/N factor: SNR = P |sum_n h_n|^2 / (N sigma^2).

#pragma once

#include <vector>

#include "pinch/channel.hpp"
#include "pinch/multiuser.hpp"
#include "pinch/sca.hpp"

namespace pinch {

/// Admissible segment of the waveguide plus the spacing floor.
struct ArrayBounds
{
    double lo;
    double hi;
    double spacing;
};

struct ArrayPlacement
{
    Eigen::VectorXd positions; // strictly increasing
    double spacing_floor;
    double achieved_snr;
    bool degraded = false; // phase alignment could not be completed
};

/// Array SNR P |h|^2 / (N sigma^2) at the given positions.
double array_snr(const Eigen::VectorXd &positions, const Point3 &user, const SystemConfig &cfg,
                 Attenuation att = Attenuation::ignore);

/// Sum of inverse distances, the large-scale gain maximised by stage 1.
double array_pathloss_objective(const Eigen::VectorXd &positions, const Point3 &user, const SystemConfig &cfg);

/// Delta-spaced grid of N pinches centred at `center`, shifted as a block to
/// stay inside the bounds.
Eigen::VectorXd spaced_grid(double center, int N, const ArrayBounds &bounds);

/// Stage 1: the Delta-spaced grid centred at the user projection, which
/// maximises the sum of inverse distances.
ArrayPlacement stage1_min_pathloss(const Point3 &user, int N, const ArrayBounds &bounds, const SystemConfig &cfg,
                                   Attenuation att = Attenuation::ignore);

/// Stage 2: move pinches 2..N by the smallest shift that puts their phase a
/// whole number of turns from pinch 1, keeping the spacing floor. Falls back
/// to the input with `degraded` set when no aligned layout fits.
ArrayPlacement stage2_phase_align(const ArrayPlacement &placement, const Point3 &user, const ArrayBounds &bounds,
                                  const SystemConfig &cfg, Attenuation att = Attenuation::ignore);

struct TimeShares
{
    Eigen::VectorXd t;
    double horizon;
};

/// Rate of a user holding share t of the frame: t log2(1 + a / t).
double time_share_rate(double a, double t);

/// Smallest share t in (0, T] with t log2(1 + a / t) >= R.
double time_share_for_rate(double a, double R, double T);

struct TimeAllocation
{
    TimeShares shares;
    double rate; // common rate level
};

/// Max-min time allocation for fixed effective SNRs a_m: bisection on the
/// common rate R with sum_m t_m(R) <= T.
TimeAllocation allocate_time(const Eigen::VectorXd &a, double T);

struct ArrayOptions
{
    int max_outer = 30;
    double tolerance = 1e-6;
    Attenuation attenuation = Attenuation::ignore;
    ScaOptions sca{30};
};

struct TdmaArrayResult
{
    ArrayPlacement placement;
    TimeShares shares;
    double min_rate;
    std::vector<double> history; // min rate after each outer iteration
    bool converged;
};

/// Max-min TDMA with N pinches shared by all users: alternate the time
/// allocation with an SCA position update, from several aligned starts.
TdmaArrayResult tdma_array_maxmin(const std::vector<Point3> &users, int N, const ArrayBounds &bounds, double T,
                                  const SystemConfig &cfg, const ArrayOptions &opt = {});

/// Per-user effective SNRs a_m = P |h_m|^2 / (N sigma^2).
Eigen::VectorXd tdma_effective_snrs(const Eigen::VectorXd &positions, const std::vector<Point3> &users,
                                    const SystemConfig &cfg, Attenuation att = Attenuation::ignore);

struct NomaArrayResult
{
    ArrayPlacement placement;
    double alpha_p;
    double alpha_s;
    double secondary_rate;
    std::vector<double> history; // secondary SNR after each outer iteration, negative while infeasible
    bool converged;
};

/// Least primary power share meeting gamma_p at the primary user and at the
/// secondary user's SIC stage for the given positions; above 1 when the
/// positions cannot serve the primary.
double noma_array_power_share(const Eigen::VectorXd &positions, const Point3 &primary, const Point3 &secondary,
                              double gamma_p, const SystemConfig &cfg, const NomaNoise &noise,
                              Attenuation att = Attenuation::ignore);

/// Two-user CR-NOMA with N pinches: alternate the closed-form power share
/// with SCA position updates. Throws InfeasibleError when no start admits the
/// primary's QoS.
NomaArrayResult noma_array_bcd(const Point3 &primary, const Point3 &secondary, int N, const ArrayBounds &bounds,
                               double gamma_p, const SystemConfig &cfg, const NomaNoise &noise,
                               const ArrayOptions &opt = {});

} // namespace pinch
