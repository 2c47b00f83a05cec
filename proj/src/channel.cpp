// SPDX-License-Identifier: Apache-2.0
//
// irsbt - beam training simulation for IRS-assisted multiuser links
// Copyright (C) 2026 The irsbt Authors
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
#include "irsbt/channel.hpp"

#include "irsbt/codebook.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace irsbt
{

namespace
{

double norm3(const Vec3 &v)
{
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace

void ScenarioConfig::validate() const
{
    if (n_x < 2)
    {
        throw ConfigError("n_x must be at least 2");
    }
    if (n_z < 1 || n_a < 1 || k_users < 1)
    {
        throw ConfigError("n_z, n_a and k_users must be positive");
    }
    if (!(d_i_over_lambda > 0.0 && d_i_over_lambda <= 1.0))
    {
        throw ConfigError("d_i_over_lambda must lie in (0, 1]");
    }
    if (!(user_ring_radius >= 1.0))
    {
        throw ConfigError("user_ring_radius must be at least 1 m");
    }
    if (!(ap_irs_distance() >= 1.0))
    {
        throw ConfigError("AP-IRS distance must be at least 1 m");
    }
    if (!(gamma_ai > 0.0 && gamma_iu > 0.0))
    {
        throw ConfigError("path-loss exponents must be positive");
    }
    for (double v : {xi0_db, noise_power_dbm, gamma_gap_db})
    {
        if (!std::isfinite(v))
        {
            throw ConfigError("xi0_db, noise_power_dbm and gamma_gap_db must be finite");
        }
    }
    if (std::isnan(kappa_ai_db) || std::isnan(kappa_iu_db))
    {
        throw ConfigError("Rician factors must not be NaN");
    }
}

double ScenarioConfig::ap_irs_distance() const
{
    return norm3({ap_position[0] - irs_position[0], ap_position[1] - irs_position[1],
                  ap_position[2] - irs_position[2]});
}

double ScenarioConfig::noise_power_w() const
{
    return db_to_linear(noise_power_dbm) * 1e-3;
}

double ScenarioConfig::amplitude_scale() const
{
    const double ai = path_gain(xi0_db, ap_irs_distance(), gamma_ai);
    const double iu = path_gain(xi0_db, user_ring_radius, gamma_iu);
    return std::sqrt(ai * iu * static_cast<double>(n_a)) * static_cast<double>(n_z);
}

std::string to_string(FadingModel m)
{
    return m == FadingModel::path_gain ? "path_gain" : "per_element";
}

FadingModel fading_model_from_string(const std::string &s)
{
    if (s == "path_gain")
    {
        return FadingModel::path_gain;
    }
    if (s == "per_element")
    {
        return FadingModel::per_element;
    }
    throw ConfigError("unknown fading_model '" + s + "'");
}

std::string to_string(UserPlacement p)
{
    return p == UserPlacement::random ? "random" : "uniform";
}

UserPlacement user_placement_from_string(const std::string &s)
{
    if (s == "random")
    {
        return UserPlacement::random;
    }
    if (s == "uniform")
    {
        return UserPlacement::uniform;
    }
    throw ConfigError("unknown user_placement '" + s + "'");
}

int ChannelRealization::n_x() const noexcept
{
    return users.empty() ? 0 : static_cast<int>(users.front().effective_channel.size());
}

double arrival_direction(const ScenarioConfig &cfg)
{
    // The horizontal IRS axis is x; cos(azimuth) sin(elevation) is the x component of the unit vector.
    const Vec3 d{cfg.ap_position[0] - cfg.irs_position[0], cfg.ap_position[1] - cfg.irs_position[1],
                 cfg.ap_position[2] - cfg.irs_position[2]};
    return 2.0 * cfg.d_i_over_lambda * d[0] / norm3(d);
}

SpatialDirection los_direction_for_user(double azimuth, const ScenarioConfig &cfg)
{
    if (!(azimuth >= 0.0 && azimuth <= std::numbers::pi))
    {
        throw std::invalid_argument("user azimuth must lie in [0, pi]");
    }
    return SpatialDirection::wrap(2.0 * cfg.d_i_over_lambda * std::cos(azimuth) - arrival_direction(cfg));
}

double path_gain(double xi0_db, double distance_m, double gamma)
{
    if (!(distance_m >= 1.0))
    {
        throw std::invalid_argument("path_gain distance must be at least the 1 m reference");
    }
    return db_to_linear(xi0_db) * std::pow(distance_m, -gamma);
}

Complex draw_complex_gaussian(double variance, Rng &rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ComplexVector draw_rician_vector(double kappa_db, std::span<const Complex> los, Rng &rng)
{
    if (std::isnan(kappa_db))
    {
        throw std::invalid_argument("Rician factor must not be NaN");
    }
    double los_weight = 1.0;
    double nlos_weight = 0.0;
    if (kappa_db == -std::numeric_limits<double>::infinity())
    {
        los_weight = 0.0;
        nlos_weight = 1.0;
    }
    else if (std::isfinite(kappa_db))
    {
        const double k = db_to_linear(kappa_db);
        los_weight = std::sqrt(k / (1.0 + k));
        nlos_weight = std::sqrt(1.0 / (1.0 + k));
    }

    ComplexVector out(los.size());
    for (std::size_t n = 0; n < los.size(); ++n)
    {
        // The scattered draw is consumed even when its weight is zero so that the
        // RNG stream does not depend on kappa.
        const Complex w = draw_complex_gaussian(1.0, rng);
        out[n] = los_weight * los[n] + nlos_weight * w;
    }
    return out;
}

int optimal_index(SpatialDirection phi, int n_x)
{
    int best = 1;
    double best_dist = std::abs(phi.value() - center_direction(1, n_x).value());
    for (int j = 2; j <= n_x; ++j)
    {
        const double d = std::abs(phi.value() - center_direction(j, n_x).value());
        if (d < best_dist)
        {
            best = j;
            best_dist = d;
        }
    }
    return best;
}

std::vector<double> draw_user_azimuths(const ScenarioConfig &cfg, Rng &rng)
{
    std::vector<double> az(static_cast<std::size_t>(cfg.k_users));
    if (cfg.user_placement == UserPlacement::uniform)
    {
        for (int k = 0; k < cfg.k_users; ++k)
        {
            az[static_cast<std::size_t>(k)] = (k + 0.5) * std::numbers::pi / cfg.k_users;
        }
        return az;
    }
    std::uniform_real_distribution<double> uniform(0.0, std::numbers::pi);
    for (auto &a : az)
    {
        a = uniform(rng);
    }
    return az;
}

ChannelRealization realize_channels(const ScenarioConfig &cfg, std::span<const double> azimuths, Rng &rng)
{
    cfg.validate();
    if (static_cast<int>(azimuths.size()) != cfg.k_users)
    {
        throw ConfigError("expected " + std::to_string(cfg.k_users) + " user azimuths, got " +
                          std::to_string(azimuths.size()));
    }
    const auto n = static_cast<std::size_t>(cfg.n_x);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    ChannelRealization out;
    out.amplitude_scale = cfg.amplitude_scale();
    out.noise_power_w = cfg.noise_power_w();

    const double phi_r = arrival_direction(cfg);
    const auto u_r = steering_vector(phi_r, n);
    const Complex h_los = std::polar(1.0, phase(rng));

    // AP-IRS link, shared by all users.
    ComplexVector h_vec;
    Complex h_gain{};
    if (cfg.fading_model == FadingModel::path_gain)
    {
        const Complex los[1] = {h_los};
        h_gain = draw_rician_vector(cfg.kappa_ai_db, los, rng)[0];
        h_vec.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            h_vec[i] = h_gain * u_r[i];
        }
    }
    else
    {
        ComplexVector los(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            los[i] = h_los * u_r[i];
        }
        h_vec = draw_rician_vector(cfg.kappa_ai_db, los, rng);
    }

    for (double azimuth : azimuths)
    {
        UserChannel user;
        user.azimuth = azimuth;
        user.los_direction = los_direction_for_user(azimuth, cfg);
        user.optimal_index = optimal_index(user.los_direction, cfg.n_x);

        const double phi_t = 2.0 * cfg.d_i_over_lambda * std::cos(azimuth);
        const auto u_t = steering_vector(phi_t, n);
        const Complex g_los = std::polar(1.0, phase(rng));

        ComplexVector g_vec;
        if (cfg.fading_model == FadingModel::path_gain)
        {
            const Complex los[1] = {g_los};
            const Complex g_gain = draw_rician_vector(cfg.kappa_iu_db, los, rng)[0];
            g_vec.resize(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                g_vec[i] = g_gain * u_t[i];
            }
            user.effective_scalar_gain = out.amplitude_scale * std::conj(g_gain) * h_gain;
        }
        else
        {
            ComplexVector los(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                los[i] = g_los * u_t[i];
            }
            g_vec = draw_rician_vector(cfg.kappa_iu_db, los, rng);
            user.effective_scalar_gain = out.amplitude_scale * std::conj(g_los) * h_los;
        }

        // Received amplitude sum_n conj(g_n) v_n h_n, i.e. f_n = scale * g_n * conj(h_n).
        user.effective_channel.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            user.effective_channel[i] = out.amplitude_scale * g_vec[i] * std::conj(h_vec[i]);
        }
        out.users.push_back(std::move(user));
    }
    return out;
}

} // namespace irsbt
