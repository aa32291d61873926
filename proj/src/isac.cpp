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

#include "pinch/isac.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pinch {

namespace {

// d(h^T w)/dx_p for each transmit pinch.
Eigen::VectorXd snr_gradient(const Eigen::VectorXd &x, const Eigen::VectorXcd &w, const Point3 &to,
                             const IsacScene &scene, const SystemConfig &cfg, double scale)
{
    std::complex<double> s(0.0);
    Eigen::VectorXcd dh(x.size());
    for (Eigen::Index p = 0; p < x.size(); ++p)
    {
        s += channel_at(x(p), scene.tx_offsets(p), to, cfg, Attenuation::ignore) * w(p);
        dh(p) = channel_at_derivative(x(p), scene.tx_offsets(p), to, cfg, Attenuation::ignore) * w(p);
    }
    Eigen::VectorXd g(x.size());
    for (Eigen::Index p = 0; p < x.size(); ++p)
        g(p) = 2.0 * scale * std::real(std::conj(s) * dh(p));
    return g;
}

Eigen::VectorXd clip(Eigen::VectorXd x, double hi) { return x.cwiseMax(0.0).cwiseMin(hi); }

} // namespace

void IsacScene::validate() const
{
    if (!(reflection > 0))
        throw std::invalid_argument("Reflection coefficient must be positive.");
    if (!(sensing_floor >= 0))
        throw std::invalid_argument("Sensing floor cannot be negative.");
    if (!(sensing_noise > 0))
        throw std::invalid_argument("Sensing noise must be positive.");
    if (tx_offsets.size() < 1 || rx_offsets.size() < 1)
        throw std::invalid_argument("At least one transmit and one receive waveguide are required.");
    if (user.z() != 0.0 || target.z() != 0.0)
        throw std::invalid_argument("User and target must lie on the ground plane.");
    if (!(x_max > 0))
        throw std::invalid_argument("Waveguide length must be positive.");
}

ReceivePlacement isac_receive_placement(const IsacScene &scene, const SystemConfig &cfg)
{
    scene.validate();
    const Eigen::Index Q = scene.rx_offsets.size();
    ReceivePlacement r{Eigen::VectorXd::Constant(Q, scene.target.x()), Eigen::VectorXcd(Q)};
    for (Eigen::Index q = 0; q < Q; ++q)
        r.combiner(q) = channel_at(scene.target.x(), scene.rx_offsets(q), scene.target, cfg, Attenuation::ignore);
    r.combiner /= r.combiner.norm();
    return r;
}

double isac_receive_gain(const IsacScene &scene, const SystemConfig &cfg)
{
    double g = 0.0;
    for (Eigen::Index q = 0; q < scene.rx_offsets.size(); ++q)
    {
        const double dy = scene.rx_offsets(q) - scene.target.y();
        g += cfg.friis() * scene.reflection * scene.reflection / (dy * dy + cfg.height() * cfg.height());
    }
    return g;
}

Eigen::VectorXcd isac_tx_channel(const Eigen::VectorXd &tx_positions, const Point3 &to, const IsacScene &scene,
                                 const SystemConfig &cfg)
{
    if (tx_positions.size() != scene.tx_offsets.size())
        throw std::invalid_argument("One transmit position per waveguide is required.");
    Eigen::VectorXcd h(tx_positions.size());
    for (Eigen::Index p = 0; p < h.size(); ++p)
        h(p) = channel_at(tx_positions(p), scene.tx_offsets(p), to, cfg, Attenuation::ignore);
    return h;
}

double sensing_snr(const Eigen::VectorXcd &w, const Eigen::VectorXd &tx_positions, const IsacScene &scene,
                   const SystemConfig &cfg)
{
    const auto h = isac_tx_channel(tx_positions, scene.target, scene, cfg);
    const double Q = double(scene.rx_offsets.size());
    return isac_receive_gain(scene, cfg) * std::norm(h.cwiseProduct(w).sum()) / (Q * scene.sensing_noise);
}

double communication_snr(const Eigen::VectorXcd &w, const Eigen::VectorXd &tx_positions, const IsacScene &scene,
                         const SystemConfig &cfg)
{
    const auto h = isac_tx_channel(tx_positions, scene.user, scene, cfg);
    return std::norm(h.cwiseProduct(w).sum()) / cfg.noise_power();
}

std::optional<IsacSolution> isac_beamformer(const Eigen::VectorXd &tx_positions, const IsacScene &scene,
                                            const SystemConfig &cfg, double p_max)
{
    const Eigen::VectorXcd hu = isac_tx_channel(tx_positions, scene.user, scene, cfg);
    const Eigen::VectorXcd ht = isac_tx_channel(tx_positions, scene.target, scene, cfg);
    const Eigen::VectorXcd eu = hu.conjugate() / hu.norm();
    Eigen::VectorXcd et = ht.conjugate() / ht.norm();
    const std::complex<double> overlap = eu.dot(et);
    if (std::abs(overlap) > 0)
        et *= std::conj(overlap) / std::abs(overlap);

    auto beam = [&](double theta)
    {
        Eigen::VectorXcd v = (1.0 - theta) * eu + theta * et;
        return Eigen::VectorXcd(v * (std::sqrt(p_max) / v.norm()));
    };
    auto sensing = [&](double theta) { return sensing_snr(beam(theta), tx_positions, scene, cfg); };

    double theta = 0.0;
    if (sensing(0.0) < scene.sensing_floor)
    {
        if (sensing(1.0) < scene.sensing_floor)
            return std::nullopt;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (sensing(mid) < scene.sensing_floor ? lo : hi) = mid;
        }
        theta = hi;
    }
    IsacSolution s;
    s.w = beam(theta);
    s.tx_positions = tx_positions;
    s.theta = theta;
    s.comm_snr = communication_snr(s.w, tx_positions, scene, cfg);
    s.comm_rate = std::log2(1.0 + s.comm_snr);
    s.sensing = sensing_snr(s.w, tx_positions, scene, cfg);
    s.history = {s.comm_snr};
    return s;
}

IsacSolution isac_midpoint_baseline(const IsacScene &scene, const SystemConfig &cfg, double p_max)
{
    scene.validate();
    const double mid = std::clamp(0.5 * (scene.user.x() + scene.target.x()), 0.0, scene.x_max);
    auto s = isac_beamformer(Eigen::VectorXd::Constant(scene.tx_offsets.size(), mid), scene, cfg, p_max);
    if (!s)
        throw InfeasibleError("Sensing floor unreachable with the midpoint placement.");
    return *s;
}

IsacSolution isac_fixed_antenna(const IsacScene &scene, const SystemConfig &cfg, double p_max)
{
    scene.validate();
    auto s = isac_beamformer(Eigen::VectorXd::Constant(scene.tx_offsets.size(), 0.5 * scene.x_max), scene, cfg,
                             p_max);
    if (!s)
        throw InfeasibleError("Sensing floor unreachable with the fixed placement.");
    return *s;
}

IsacSolution isac_optimize(const IsacScene &scene, const SystemConfig &cfg, double p_max, const IsacOptions &opt,
                           const Eigen::VectorXd *warm)
{
    scene.validate();
    const Eigen::Index P = scene.tx_offsets.size();
    const double Q = double(scene.rx_offsets.size());
    const double sense_scale = isac_receive_gain(scene, cfg) / (Q * scene.sensing_noise);
    const double comm_scale = 1.0 / cfg.noise_power();

    std::vector<Eigen::VectorXd> starts;
    if (warm)
        starts.push_back(clip(*warm, scene.x_max));
    for (double x : {0.5 * (scene.user.x() + scene.target.x()), scene.user.x(), scene.target.x(), 0.5 * scene.x_max})
        starts.push_back(Eigen::VectorXd::Constant(P, std::clamp(x, 0.0, scene.x_max)));
    if (P > 1 && P <= opt.split_start_limit)
        for (unsigned mask = 1; mask + 1 < (1u << P); ++mask)
        {
            Eigen::VectorXd x(P);
            for (Eigen::Index p = 0; p < P; ++p)
                x(p) = (mask >> p) & 1u ? scene.target.x() : scene.user.x();
            starts.push_back(clip(x, scene.x_max));
        }

    std::optional<IsacSolution> best;
    for (const auto &start : starts)
    {
        auto current = isac_beamformer(start, scene, cfg, p_max);
        if (!current)
            continue;
        double step = opt.initial_step;
        for (int it = 0; it < opt.max_iterations && step >= opt.min_step; ++it)
        {
            const Eigen::VectorXd &x0 = current->tx_positions;
            const Eigen::VectorXd gc = snr_gradient(x0, current->w, scene.user, scene, cfg, comm_scale);
            const Eigen::VectorXd gs = snr_gradient(x0, current->w, scene.target, scene, cfg, sense_scale);
            const double nc = gc.norm(), ns = gs.norm();
            if (!(nc > 0))
                break;

            // Linearised subproblem: ascend the communication SNR while keeping
            // the linearised sensing SNR above the floor. tau blends the two
            // normalised gradients and plays the role of the multiplier.
            auto move = [&](double tau)
            {
                Eigen::VectorXd dir = (1.0 - tau) * gc / nc;
                if (ns > 0)
                    dir += tau * gs / ns;
                const double n = dir.cwiseAbs().maxCoeff();
                return n > 0 ? clip(x0 + dir * (step / n), scene.x_max) : x0;
            };
            auto sense_lin = [&](const Eigen::VectorXd &x) { return current->sensing + gs.dot(x - x0); };
            double tau = 0.0;
            if (sense_lin(move(0.0)) < scene.sensing_floor && ns > 0)
            {
                double lo = 0.0, hi = 1.0;
                for (int k = 0; k < 60; ++k)
                {
                    const double mid = 0.5 * (lo + hi);
                    (sense_lin(move(mid)) < scene.sensing_floor ? lo : hi) = mid;
                }
                tau = hi;
            }
            const auto trial = isac_beamformer(move(tau), scene, cfg, p_max);
            if (trial && trial->comm_snr > current->comm_snr)
            {
                auto history = std::move(current->history);
                history.push_back(trial->comm_snr);
                current = trial;
                current->history = std::move(history);
                step = std::min(2.0 * step, opt.max_step);
            }
            else
                step *= 0.5;
        }
        if (!best || current->comm_snr > best->comm_snr)
            best = std::move(current);
    }
    if (!best)
        throw InfeasibleError("Sensing floor unreachable from every start.");
    return *best;
}

std::vector<std::optional<IsacSolution>> isac_sweep(IsacScene scene, const SystemConfig &cfg, double p_max,
                                                    const std::vector<double> &floors, const IsacOptions &opt)
{
    if (!std::is_sorted(floors.begin(), floors.end()))
        throw std::invalid_argument("Sensing floors must be ascending.");
    std::vector<std::optional<IsacSolution>> out(floors.size());
    std::optional<Eigen::VectorXd> warm;
    for (std::size_t i = floors.size(); i-- > 0;)
    {
        scene.sensing_floor = floors[i];
        try
        {
            out[i] = isac_optimize(scene, cfg, p_max, opt, warm ? &*warm : nullptr);
            warm = out[i]->tx_positions;
        }
        catch (const InfeasibleError &)
        {
        }
    }
    return out;
}

} // namespace pinch
