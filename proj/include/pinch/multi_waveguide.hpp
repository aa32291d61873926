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

// Downlink MU-MISO over P waveguides with one pinch each. User m receives
// y_m = h_m^T sum_k v_k s_k + n_m, where entry p of h_m is the channel through
// the pinch on waveguide p.

#pragma once

#include <vector>

#include "pinch/channel.hpp"

namespace pinch {

struct WmmseState
{
    Eigen::VectorXcd u; // MMSE receivers
    Eigen::VectorXd w;  // MSE weights
    Eigen::VectorXd e;  // MSEs
};

struct BeamformingSolution
{
    Eigen::VectorXd positions; // one pinch per waveguide; empty for fixed arrays
    Eigen::MatrixXcd beamformers; // column m is v_m
    Eigen::VectorXd rates;
    double sum_rate;
    double multiplier = 0.0; // power multiplier of the last beamformer block
    WmmseState state;
    std::vector<double> history; // sum rate after each full cycle
    bool converged = true;
};

struct WmmseOptions
{
    int max_iterations = 100;
    double tolerance = 1e-5;
    double coarse_step = 0.0; // m; 0 selects lambda / 4
    double fine_step = 1e-3;  // m
    Attenuation attenuation = Attenuation::ignore;
};

/// Channel matrix with row m equal to h_m^T.
Eigen::MatrixXcd multi_waveguide_channels(const WaveguideLayout &layout, const Eigen::VectorXd &positions,
                                          const std::vector<Point3> &users, const SystemConfig &cfg,
                                          Attenuation att = Attenuation::ignore);

/// Per-user rates log2(1 + SINR_m) for channel matrix H and beamformers V.
Eigen::VectorXd mu_miso_rates(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &V, double noise);

/// Closed-form receiver and weight blocks for fixed beamformers.
WmmseState wmmse_receivers(const Eigen::MatrixXcd &H, const Eigen::MatrixXcd &V, double noise);

/// Beamformer block: v_m = w_m conj(u_m) (A + mu I)^+ conj(h_m) with
/// A = sum_k w_k |u_k|^2 conj(h_k) h_k^T and the least mu >= 0 meeting the
/// total power budget. Returns the beamformers and writes mu.
Eigen::MatrixXcd wmmse_beamformers(const Eigen::MatrixXcd &H, const WmmseState &state, double p_max, double &mu);

/// Equal-power maximum-ratio start: v_m = sqrt(P/M) conj(h_m) / |h_m|.
Eigen::MatrixXcd mrt_equal_power(const Eigen::MatrixXcd &H, double p_max);

/// WMMSE over beamformers only, for fixed channels.
BeamformingSolution wmmse_fixed_channels(const Eigen::MatrixXcd &H, double noise, double p_max,
                                         const WmmseOptions &opt = {});

/// Waveguide-to-user assignment minimising the total lateral offset
/// |y_p - y_m|: optimal (Hungarian) when P = M, greedy otherwise. Every
/// waveguide left over when P > M follows its laterally nearest user.
std::vector<int> assign_waveguides(const WaveguideLayout &layout, const std::vector<Point3> &users);

/// Two-stage design: pinches placed at the assigned users' x-coordinates,
/// then WMMSE over beamformers with the positions frozen.
BeamformingSolution two_stage_mrt_wmmse(const WaveguideLayout &layout, const std::vector<Point3> &users,
                                        const SystemConfig &cfg, double p_max, const WmmseOptions &opt = {});

/// Joint design: cyclic receiver, weight, beamformer and per-waveguide
/// position blocks, started from the two-stage placement with equal-power MRT.
BeamformingSolution wmmse_bcd(const WaveguideLayout &layout, const std::vector<Point3> &users,
                              const SystemConfig &cfg, double p_max, const WmmseOptions &opt = {});

/// Single user: each pinch at its waveguide's closed-form SISO position and
/// maximum-ratio transmission at full power.
BeamformingSolution mrt_single_user(const WaveguideLayout &layout, const Point3 &user, const SystemConfig &cfg,
                                    double p_max, Attenuation att = Attenuation::ignore);

/// Element positions of a half-wavelength ULA along y centred at (0, 0, d_v).
std::vector<Point3> ula_elements(int count, const SystemConfig &cfg);

/// Fixed-antenna benchmark: the ULA above with WMMSE beamforming.
BeamformingSolution ula_baseline(const std::vector<Point3> &users, int antennas, const SystemConfig &cfg,
                                 double p_max, const WmmseOptions &opt = {});

} // namespace pinch
