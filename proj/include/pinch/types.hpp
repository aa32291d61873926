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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pinch {

inline constexpr double speed_of_light = 299792458.0;

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
using Point3 = Vec3<double>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ChannelCoefficient = std::complex<double>;

/// Raised when a problem instance admits no feasible point (QoS unreachable,
/// spacing cannot fit, sensing floor violated, ...).
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Attenuation
{
    include,
    ignore
};

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Carrier and medium constants shared by every channel computation.
///
/// Immutable after construction. The derived quantities (free-space and guided
/// wavelength, Friis constant) are computed once; the two equivalent forms of
/// the Friis constant, c^2/(4 pi fc)^2 and (lambda/(4 pi))^2, are cross-checked
/// in the constructor.
template <typename Scalar>
class BasicSystemConfig
{
public:
    BasicSystemConfig(Scalar carrier_frequency, Scalar refractive_index, Scalar attenuation,
                      Scalar height, Scalar noise_power, Scalar transmit_power)
        : fc_(carrier_frequency), n_eff_(refractive_index), alpha_(attenuation), d_v_(height),
          noise_(noise_power), power_(transmit_power)
    {
        if (!(fc_ > 0) || !std::isfinite(fc_))
            throw std::invalid_argument("Carrier frequency must be positive.");
        if (!(n_eff_ >= 1))
            throw std::invalid_argument("Effective refractive index must be at least 1.");
        if (!(alpha_ >= 0) || !std::isfinite(alpha_))
            throw std::invalid_argument("Attenuation coefficient cannot be negative.");
        if (!(d_v_ > 0))
            throw std::invalid_argument("Waveguide height must be positive.");
        if (!(noise_ > 0))
            throw std::invalid_argument("Noise power must be positive.");
        if (!(power_ > 0))
            throw std::invalid_argument("Transmit power must be positive.");

        const Scalar c = Scalar(speed_of_light);
        const Scalar four_pi = Scalar(4) * std::numbers::pi_v<Scalar>;
        lambda_ = c / fc_;
        lambda_g_ = lambda_ / n_eff_;
        eta_ = (c * c) / ((four_pi * fc_) * (four_pi * fc_));

        const Scalar eta_alt = (lambda_ / four_pi) * (lambda_ / four_pi);
        if (std::abs(eta_ - eta_alt) > Scalar(1e-12) * eta_)
            throw std::logic_error("Friis constant definitions disagree.");
    }

    /// Table III defaults: 28 GHz, n_eff = 1.4, alpha = 0.0092 1/m, d_v = 5 m,
    /// noise -70 dBm, transmit power 30 dBm.
    static BasicSystemConfig table_defaults()
    {
        return BasicSystemConfig(Scalar(28e9), Scalar(1.4), Scalar(0.0092), Scalar(5),
                                 Scalar(dbm_to_watt(-70.0)), Scalar(dbm_to_watt(30.0)));
    }

    Scalar carrier_frequency() const { return fc_; }
    Scalar wavelength() const { return lambda_; }
    Scalar refractive_index() const { return n_eff_; }
    Scalar guided_wavelength() const { return lambda_g_; }
    Scalar attenuation() const { return alpha_; }
    Scalar height() const { return d_v_; }
    Scalar friis() const { return eta_; }
    Scalar noise_power() const { return noise_; }
    Scalar transmit_power() const { return power_; }

    BasicSystemConfig with_attenuation(Scalar a) const { return {fc_, n_eff_, a, d_v_, noise_, power_}; }
    BasicSystemConfig with_height(Scalar h) const { return {fc_, n_eff_, alpha_, h, noise_, power_}; }
    BasicSystemConfig with_noise_power(Scalar n) const { return {fc_, n_eff_, alpha_, d_v_, n, power_}; }
    BasicSystemConfig with_transmit_power(Scalar p) const { return {fc_, n_eff_, alpha_, d_v_, noise_, p}; }
    BasicSystemConfig with_carrier_frequency(Scalar f) const { return {f, n_eff_, alpha_, d_v_, noise_, power_}; }
    BasicSystemConfig with_refractive_index(Scalar n) const { return {fc_, n, alpha_, d_v_, noise_, power_}; }

private:
    Scalar fc_, n_eff_, alpha_, d_v_, noise_, power_;
    Scalar lambda_{}, lambda_g_{}, eta_{};
};

using SystemConfig = BasicSystemConfig<double>;

/// Rectangular service region: x in [0, length], y in [-width/2, width/2].
struct Region
{
    double length;
    double width;

    Region(double length_x, double width_y) : length(length_x), width(width_y)
    {
        if (!(length > 0) || !(width > 0))
            throw std::invalid_argument("Region sides must be positive.");
    }
    static Region square(double side) { return Region(side, side); }
};

struct BlockageModel
{
    double density;

    explicit BlockageModel(double beta) : density(beta)
    {
        if (!(beta > 0) || beta > 1)
            throw std::invalid_argument("Blockage density must lie in (0, 1].");
    }
};

/// P parallel waveguides at height d_v, evenly spread across a region of side
/// D. Feed point p sits at (0, (p-1) d_h - D/2, d_v); a single waveguide runs
/// along the region's center line y = 0.
class WaveguideLayout
{
public:
    WaveguideLayout(int count, double height, double region_side, double wavelength)
        : count_(count), height_(height), side_(region_side)
    {
        if (count < 1)
            throw std::invalid_argument("Waveguide count must be at least 1.");
        if (!(height > 0) || !(region_side > 0))
            throw std::invalid_argument("Waveguide height and region side must be positive.");
        spacing_ = count > 1 ? region_side / double(count - 1) : 0.0;
        narrow_ = count > 1 && spacing_ <= 10.0 * wavelength;
        offsets_.resize(count);
        for (int p = 0; p < count; ++p)
            offsets_(p) = count > 1 ? double(p) * spacing_ - region_side / 2.0 : 0.0;
    }

    int count() const { return count_; }
    double height() const { return height_; }
    double region_side() const { return side_; }
    double spacing() const { return spacing_; }
    bool narrow_spacing() const { return narrow_; }
    double offset(int p) const { return offsets_(p); }
    const Eigen::VectorXd &offsets() const { return offsets_; }
    Point3 feed_point(int p) const { return {0.0, offsets_(p), height_}; }

private:
    int count_;
    double height_, side_, spacing_{};
    bool narrow_{};
    Eigen::VectorXd offsets_;
};

inline double rate_from_snr(double snr)
{
    if (!(snr >= 0))
        throw std::invalid_argument("SNR cannot be negative.");
    return std::log2(1.0 + snr);
}

} // namespace pinch
