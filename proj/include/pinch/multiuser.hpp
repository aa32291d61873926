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

// One pinch on one waveguide serving several users. Both schemes use the
// attenuation-free path loss (x - x_m)^2 + y_m^2 + d_v^2.

#pragma once

#include <vector>

#include "pinch/types.hpp"

namespace pinch {

struct TdmaAllocation
{
    double x_star;
    Eigen::VectorXd powers; // W, one per user
    Eigen::VectorXd snrs;   // per-user SNR inside its slot
    double min_rate;        // bps/Hz, slot share 1/M included
};

/// Max-min fair TDMA with a fixed pinch: the pinch sits at the mean user
/// x-coordinate and power is split in proportion to each user's path loss, so
/// every user sees the same SNR. Each user owns a 1/M share of the frame.
TdmaAllocation tdma_maxmin_closed_form(const std::vector<Point3> &users, const SystemConfig &cfg, double p_max);

/// Per-user TDMA rates (slot share included) for an arbitrary pinch position
/// and power split.
Eigen::VectorXd tdma_rates(const std::vector<Point3> &users, const SystemConfig &cfg, double x,
                           const Eigen::VectorXd &powers);

struct NomaSolution
{
    double x_star;
    double alpha_p;
    double alpha_s;
    double secondary_snr;
    double secondary_rate;
    double primary_sinr;
};

struct NomaNoise
{
    double primary;   // sigma_p^2, W
    double secondary; // sigma_s^2, W
};

/// Two-user cognitive-radio NOMA with one pinch: maximise the secondary rate
/// subject to the primary SINR floor gamma_p at the primary user and at the
/// secondary user's SIC stage.
///
/// Writing r_p for the half-width of the positions meeting the primary
/// constraint, alpha_p = (gamma_p sigma_p^2 (r_p^2 + C_p) + gamma_p P eta) /
/// (P eta (1 + gamma_p)); the best position for a given r_p is the point of the
/// feasible interval closest to x_s, which is x_p -/+ r_p (primary constraint
/// tight) or x_s +/- r_s (SIC constraint tight). Maximising over r_p reduces
/// to a quadratic stationarity condition plus interval end points, so the
/// returned point is globally optimal. Throws InfeasibleError when the
/// primary floor cannot be met.
NomaSolution cr_noma_two_user(const Point3 &primary, const Point3 &secondary, double gamma_p,
                              const SystemConfig &cfg, const NomaNoise &noise);

/// Evaluate the two-user NOMA objective and constraints at (x, alpha_p).
struct NomaEvaluation
{
    double secondary_snr;
    double primary_sinr;
    double sic_sinr;
};
NomaEvaluation noma_evaluate(const Point3 &primary, const Point3 &secondary, const SystemConfig &cfg,
                             const NomaNoise &noise, double x, double alpha_p);

struct NomaGrid
{
    double dx = 1e-3;
    double dalpha = 1e-4;
};

/// Exhaustive feasible maximisation of the secondary SNR over the grid
/// {x_lo + i dx} x {j dalpha}. The objective falls with alpha_p and both
/// constraints grow with it, so the best grid alpha for each x is the least
/// feasible one, located by bisection over the grid index.
NomaSolution noma_grid_oracle(const Point3 &primary, const Point3 &secondary, double gamma_p,
                              const SystemConfig &cfg, const NomaNoise &noise, const NomaGrid &grid,
                              double x_lo, double x_hi);

} // namespace pinch
