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
#pragma once

#include "irsbt/array_math.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsbt
{

using Rng = std::mt19937_64;
using Vec3 = std::array<double, 3>;

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// How small-scale fading enters the cascaded AP-IRS-user channel.
enum class FadingModel
{
    /// Rician complex path gains on the LoS geometric links: h = gamma_h u(phi_r), g_k = gamma_k u(phi_t).
    path_gain,
    /// Independent Rician draw per IRS element on both links, multiplied elementwise.
    per_element,
};

enum class UserPlacement
{
    random,  ///< azimuths i.i.d. uniform on (0, pi), redrawn every trial
    uniform, ///< theta_k = (k - 1/2) pi / K
};

/// Scenario parameters. Defaults are the 30 GHz reference deployment:
/// 160-element IRS at the origin, 64-antenna AP 16 m away, 5 users on a 2 m ring.
struct ScenarioConfig
{
    int n_x = 160;
    int n_z = 1;
    int n_a = 64;
    double d_i_over_lambda = 0.25;
    int k_users = 5;
    Vec3 ap_position{0.0, 16.0, 0.0};
    Vec3 irs_position{0.0, 0.0, 0.0};
    double user_ring_radius = 2.0;
    double xi0_db = -62.0;
    double gamma_ai = 2.3;
    double gamma_iu = 2.0;
    double kappa_ai_db = 5.0;
    double kappa_iu_db = 10.0;
    double noise_power_dbm = -109.0;
    double gamma_gap_db = 9.0;
    FadingModel fading_model = FadingModel::path_gain;
    UserPlacement user_placement = UserPlacement::random;
    std::uint64_t seed = 1;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    double ap_irs_distance() const;
    double noise_power_w() const;
    /// sqrt(xi0 D_AI^-gamma_AI * xi0 D_IU^-gamma_IU * N_A) * N_z
    double amplitude_scale() const;
};

std::string to_string(FadingModel m);
FadingModel fading_model_from_string(const std::string &s);
std::string to_string(UserPlacement p);
UserPlacement user_placement_from_string(const std::string &s);

struct UserChannel
{
    double azimuth = 0.0;
    /// f_k with received amplitude f_k^H v_x.
    ComplexVector effective_channel;
    SpatialDirection los_direction;
    int optimal_index = 0;
    /// Gain multiplying u^H(phi_k, N_x) v_x in the LoS component.
    Complex effective_scalar_gain{0.0, 0.0};
};

struct ChannelRealization
{
    std::vector<UserChannel> users;
    double amplitude_scale = 0.0;
    double noise_power_w = 0.0;

    int n_x() const noexcept;
};

/// Horizontal spatial direction of the AP as seen from the IRS (not wrapped).
double arrival_direction(const ScenarioConfig &cfg);

/// wrap(2 (d/lambda) cos(theta) - phi_r) for a user at azimuth theta in [0, pi].
SpatialDirection los_direction_for_user(double azimuth, const ScenarioConfig &cfg);

/// Linear power gain 10^(xi0_db/10) d^-gamma. Throws std::invalid_argument for d < 1 m.
double path_gain(double xi0_db, double distance_m, double gamma);

/// sqrt(k/(1+k)) los + sqrt(1/(1+k)) w with w ~ CN(0, I). kappa_db may be -inf (pure NLoS) or +inf (pure LoS).
ComplexVector draw_rician_vector(double kappa_db, std::span<const Complex> los, Rng &rng);

/// Nearest codebook centre alpha(j); exact ties go to the smaller j.
int optimal_index(SpatialDirection phi, int n_x);

std::vector<double> draw_user_azimuths(const ScenarioConfig &cfg, Rng &rng);

/// Throws ConfigError for an invalid config or azimuth count mismatch.
ChannelRealization realize_channels(const ScenarioConfig &cfg, std::span<const double> azimuths, Rng &rng);

Complex draw_complex_gaussian(double variance, Rng &rng);

} // namespace irsbt
