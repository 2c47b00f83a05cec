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

#include "irsbt/channel.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsbt
{

inline constexpr const char *kVersion = "1.0.0";

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Method
{
    single,
    multi,
    rh,
};

std::string to_string(Method m);
Method method_from_string(const std::string &s);

/// 30, 32.5, ..., 55 dB plus the 46.4 dB reference point, ascending.
std::vector<double> default_snr_grid();

struct ExperimentConfig
{
    ScenarioConfig scenario;
    std::vector<double> snr_grid_db = default_snr_grid();
    std::vector<int> m_values{2, 4, 8};
    std::vector<Method> methods{Method::single, Method::multi, Method::rh};
    int trials = 1500;
    std::string output_dir = "results";
    bool noiseless = false;
    bool trace = false;
    /// When positive, rows also carry avg_rate * (1 - training_symbols / frame_symbols).
    int frame_symbols = 0;

    /// Throws ConfigError.
    void validate() const;
};

/// Keys mirror the field names; unknown keys raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json &j);
ExperimentConfig load_config(const std::filesystem::path &path);
nlohmann::json to_json(const ExperimentConfig &cfg);

struct MetricsRow
{
    Method method = Method::single;
    int m = 1;
    double snr_db = 0.0;
    int training_symbols = 0;
    double success_rate = 0.0;
    double success_stderr = 0.0;
    double avg_rate = 0.0;
    double rate_stderr = 0.0;
    int trials = 0;
    double effective_rate = 0.0;
    /// Per-trial user averages, kept for paired comparisons between rows.
    std::vector<double> trial_success;
    std::vector<double> trial_rate;
};

struct MetricsTable
{
    std::vector<MetricsRow> rows;
    bool has_effective_rate = false;

    /// Throws std::out_of_range when no row matches; snr is matched within 1e-9 dB.
    const MetricsRow &find(Method method, int m, double snr_db) const;
};

/// P_A that makes the perfectly aligned pure-LoS received SNR equal snr_db.
double power_for_snr(double snr_db, const ScenarioConfig &cfg);
double snr_for_power(double p_a, const ScenarioConfig &cfg);

/// log2(1 + p_a |a|^2 / (Gamma sigma^2)) for a noiseless received amplitude a.
double rate_from_response(Complex response, double p_a, const ScenarioConfig &cfg);

/// Rate of `user` when the IRS reflects with the single-beam codeword of `index`.
double achievable_rate(int index, const UserChannel &user, double p_a, const ScenarioConfig &cfg);

/// Seed of an independent substream keyed by (master seed, a, b).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Monte Carlo evaluation of every (method, m, snr) cell on shared channel
/// realizations. When `trace` is non-null, one CSV line per (trial, cell, user)
/// is written to it.
MetricsTable run_experiment(const ExperimentConfig &cfg, std::ostream *trace = nullptr);

std::string results_csv(const MetricsTable &table);
nlohmann::json results_json(const MetricsTable &table, const ExperimentConfig &cfg);

/// Writes results.csv and results.json into cfg.output_dir. Throws IoError.
void emit_results(const MetricsTable &table, const ExperimentConfig &cfg);

/// Mean and standard error of the per-trial difference a - b.
struct PairedDifference
{
    double mean = 0.0;
    double standard_error = 0.0;
};
PairedDifference paired_difference(const std::vector<double> &a, const std::vector<double> &b);

} // namespace irsbt
