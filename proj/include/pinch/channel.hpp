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

// Line-of-sight channel model of a pinching antenna: in-waveguide propagation
// from the feed point to the pinch, followed by spherical-wave free-space
// propagation from the pinch to the user.

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pinch/types.hpp"

namespace pinch {

/// e^{-alpha x} e^{-j 2 pi x / lambda_g}; the attenuation factor is dropped
/// when `att` is Attenuation::ignore.
template <typename Scalar>
std::complex<Scalar> in_waveguide_gain(Scalar x, const BasicSystemConfig<Scalar> &cfg,
                                       Attenuation att = Attenuation::include)
{
    if (!(x >= 0))
        throw std::invalid_argument("In-waveguide distance cannot be negative.");
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Scalar mag = att == Attenuation::include ? std::exp(-cfg.attenuation() * x) : Scalar(1);
    return std::polar(mag, -two_pi * x / cfg.guided_wavelength());
}

/// sqrt(eta) e^{-j 2 pi d / lambda} / d.
template <typename Scalar>
std::complex<Scalar> free_space_gain(const Vec3<Scalar> &antenna, const Vec3<Scalar> &user,
                                     const BasicSystemConfig<Scalar> &cfg)
{
    const Scalar d = (antenna - user).norm();
    if (!(d > 0))
        throw std::domain_error("Antenna and user coincide.");
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    return std::polar(std::sqrt(cfg.friis()) / d, -two_pi * d / cfg.wavelength());
}

/// Channel from the feed of a waveguide at lateral offset `y_wg` through a
/// pinch at distance `x` along it.
template <typename Scalar>
std::complex<Scalar> channel_at(Scalar x, Scalar y_wg, const Vec3<Scalar> &user,
                                const BasicSystemConfig<Scalar> &cfg,
                                Attenuation att = Attenuation::include)
{
    const Vec3<Scalar> antenna(x, y_wg, cfg.height());
    return in_waveguide_gain(x, cfg, att) * free_space_gain(antenna, user, cfg);
}

/// d/dx of channel_at, used by the position-update surrogates.
template <typename Scalar>
std::complex<Scalar> channel_at_derivative(Scalar x, Scalar y_wg, const Vec3<Scalar> &user,
                                           const BasicSystemConfig<Scalar> &cfg,
                                           Attenuation att = Attenuation::include)
{
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Vec3<Scalar> antenna(x, y_wg, cfg.height());
    const Scalar d = (antenna - user).norm();
    const Scalar dx = x - user.x();
    const Scalar alpha = att == Attenuation::include ? cfg.attenuation() : Scalar(0);
    const std::complex<Scalar> h = channel_at(x, y_wg, user, cfg, att);
    // h = a(x) e^{-j phi(x)}: dh/dx = h (a'/a - j phi').
    const Scalar log_mag_rate = -alpha - dx / (d * d);
    const Scalar phase_rate = two_pi * dx / (d * cfg.wavelength()) + two_pi / cfg.guided_wavelength();
    return h * std::complex<Scalar>(log_mag_rate, -phase_rate);
}

/// Total phase 2 pi d / lambda + 2 pi x / lambda_g of a pinch at x on the
/// waveguide at offset y_wg. Strictly increasing in x whenever n_eff > 1.
template <typename Scalar>
Scalar pinch_phase(Scalar x, Scalar y_wg, const Vec3<Scalar> &user, const BasicSystemConfig<Scalar> &cfg)
{
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Vec3<Scalar> antenna(x, y_wg, cfg.height());
    return two_pi * (antenna - user).norm() / cfg.wavelength() + two_pi * x / cfg.guided_wavelength();
}

template <typename Scalar>
std::complex<Scalar> channel_single(Scalar x, const Vec3<Scalar> &user, const BasicSystemConfig<Scalar> &cfg,
                                    Attenuation att = Attenuation::include)
{
    return channel_at(x, Scalar(0), user, cfg, att);
}

/// Coherent sum over pinches on one waveguide. Positions must be strictly
/// increasing. No power normalisation is applied; callers split the feed power
/// across the N pinches.
template <typename Scalar>
std::complex<Scalar> channel_array(const VectorX<Scalar> &positions, const Vec3<Scalar> &user,
                                   const BasicSystemConfig<Scalar> &cfg,
                                   Attenuation att = Attenuation::include, Scalar y_wg = Scalar(0))
{
    std::complex<Scalar> h(0);
    for (Eigen::Index n = 0; n < positions.size(); ++n)
    {
        if (n > 0 && !(positions(n) > positions(n - 1)))
            throw std::invalid_argument("Pinch positions must be strictly increasing.");
        h += channel_at(positions(n), y_wg, user, cfg, att);
    }
    return h;
}

/// Sum of per-pinch magnitudes, the coherent upper bound on |channel_array|.
template <typename Scalar>
Scalar channel_array_magnitude_bound(const VectorX<Scalar> &positions, const Vec3<Scalar> &user,
                                     const BasicSystemConfig<Scalar> &cfg,
                                     Attenuation att = Attenuation::include, Scalar y_wg = Scalar(0))
{
    Scalar s(0);
    for (Eigen::Index n = 0; n < positions.size(); ++n)
        s += std::abs(channel_at(positions(n), y_wg, user, cfg, att));
    return s;
}

/// Per-waveguide channel vector (length P) for one user.
template <typename Scalar>
VectorX<std::complex<Scalar>> channel_multi_waveguide(const WaveguideLayout &layout,
                                                      const std::vector<VectorX<Scalar>> &positions,
                                                      const Vec3<Scalar> &user,
                                                      const BasicSystemConfig<Scalar> &cfg,
                                                      Attenuation att = Attenuation::include)
{
    if (static_cast<int>(positions.size()) != layout.count())
        throw std::invalid_argument("One position list per waveguide is required.");
    VectorX<std::complex<Scalar>> h(layout.count());
    for (int p = 0; p < layout.count(); ++p)
        h(p) = channel_array(positions[p], user, cfg, att, Scalar(layout.offset(p)));
    return h;
}

/// One pinch per waveguide: `positions(p)` is the pinch on waveguide p.
template <typename Scalar>
VectorX<std::complex<Scalar>> channel_multi_waveguide(const WaveguideLayout &layout,
                                                      const VectorX<Scalar> &positions,
                                                      const Vec3<Scalar> &user,
                                                      const BasicSystemConfig<Scalar> &cfg,
                                                      Attenuation att = Attenuation::include)
{
    if (positions.size() != layout.count())
        throw std::invalid_argument("One position per waveguide is required.");
    VectorX<std::complex<Scalar>> h(layout.count());
    for (int p = 0; p < layout.count(); ++p)
        h(p) = channel_at(positions(p), Scalar(layout.offset(p)), user, cfg, att);
    return h;
}

} // namespace pinch
