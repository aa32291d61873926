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

// Integrated sensing and communication: P transmit pinches (one per
// waveguide) serve a user while Q receive pinches collect the echo of a
// point target. Received amplitudes use the physical inner product h^T w.

#pragma once

#include <optional>
#include <vector>

#include "pinch/channel.hpp"

namespace pinch {

struct IsacScene
{
    Point3 user;
    Point3 target;
    double reflection;        // zeta
    Eigen::VectorXd tx_offsets; // y of each transmit waveguide
    Eigen::VectorXd rx_offsets; // y of each receive waveguide
    double sensing_noise;     // W
    double sensing_floor;     // required sensing SNR, linear
    double x_max;             // m, pinch range along each waveguide

    void validate() const;
};

struct ReceivePlacement
{
    Eigen::VectorXd positions;
    Eigen::VectorXcd combiner;
};

/// Every receive pinch sits at the target's x-coordinate; the combiner is the
/// normalised receive channel.
ReceivePlacement isac_receive_placement(const IsacScene &scene, const SystemConfig &cfg);

/// sum_q eta zeta^2 / ((y_q - y_t)^2 + d_v^2).
double isac_receive_gain(const IsacScene &scene, const SystemConfig &cfg);

/// Transmit channel vectors toward the user and the target.
Eigen::VectorXcd isac_tx_channel(const Eigen::VectorXd &tx_positions, const Point3 &to, const IsacScene &scene,
                                 const SystemConfig &cfg);

/// Gamma_s = receive gain |h_t^T w|^2 / (Q sigma_s^2).
double sensing_snr(const Eigen::VectorXcd &w, const Eigen::VectorXd &tx_positions, const IsacScene &scene,
                   const SystemConfig &cfg);

/// Gamma_c = |h_u^T w|^2 / sigma^2.
double communication_snr(const Eigen::VectorXcd &w, const Eigen::VectorXd &tx_positions, const IsacScene &scene,
                         const SystemConfig &cfg);

struct IsacSolution
{
    Eigen::VectorXcd w;
    Eigen::VectorXd tx_positions;
    double theta;
    double comm_snr;
    double comm_rate;
    double sensing;
    std::vector<double> history; // communication SNR per accepted iteration
};

/// w(theta) = sqrt(P) normalise((1 - theta) e_u + theta e_t), where e_u, e_t
/// are the normalised conjugate channels with e_t rotated so that e_u^H e_t is
/// real and non-negative. Returns the smallest theta meeting the sensing
/// floor; nullopt when theta = 1 falls short.
std::optional<IsacSolution> isac_beamformer(const Eigen::VectorXd &tx_positions, const IsacScene &scene,
                                            const SystemConfig &cfg, double p_max);

/// All transmit pinches at the midpoint between user and target.
IsacSolution isac_midpoint_baseline(const IsacScene &scene, const SystemConfig &cfg, double p_max);

/// All transmit pinches at the centre of their waveguides.
IsacSolution isac_fixed_antenna(const IsacScene &scene, const SystemConfig &cfg, double p_max);

struct IsacOptions
{
    int max_iterations = 150;
    double initial_step = 1e-3;
    double max_step = 0.5;
    double min_step = 1e-9;
    int split_start_limit = 6; // up to this P, also start from every user/target split
};

/// Safeguarded SCA over transmit positions alternating with the beamformer
/// family above. Starts from the midpoint, the user and target projections,
/// the waveguide centres, every split of the pinches between the user and
/// target projections (small P) and `warm` when given; the best feasible
/// result wins.
/// Throws InfeasibleError when no start meets the sensing floor.
IsacSolution isac_optimize(const IsacScene &scene, const SystemConfig &cfg, double p_max,
                           const IsacOptions &opt = {}, const Eigen::VectorXd *warm = nullptr);

/// isac_optimize over an ascending list of sensing floors, solved from the
/// largest down with warm starts so the rate is non-increasing in the floor.
/// Entries for infeasible floors are nullopt.
std::vector<std::optional<IsacSolution>> isac_sweep(IsacScene scene, const SystemConfig &cfg, double p_max,
                                                    const std::vector<double> &floors, const IsacOptions &opt = {});

} // namespace pinch
