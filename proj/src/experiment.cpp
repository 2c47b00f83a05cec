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
#include "irsbt/experiment.hpp"

#include "irsbt/beam_training.hpp"
#include "irsbt/codebook.hpp"
#include "irsbt/sweep_plan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace irsbt
{

namespace
{

using nlohmann::json;

void reject_unknown_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where)
{
    if (!obj.is_object())
    {
        throw ConfigError(where + " must be a JSON object");
    }
    for (const auto &item : obj.items())
    {
        if (!allowed.contains(item.key()))
        {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

template <typename T> void read_field(const json &obj, const char *key, T &out)
{
    if (!obj.contains(key))
    {
        return;
    }
    try
    {
        out = obj.at(key).get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

ScenarioConfig parse_scenario(const json &j)
{
    reject_unknown_keys(j,
                        {"n_x", "n_z", "n_a", "d_i_over_lambda", "k_users", "ap_position", "irs_position",
                         "user_ring_radius", "xi0_db", "gamma_ai", "gamma_iu", "kappa_ai_db", "kappa_iu_db",
                         "noise_power_dbm", "gamma_gap_db", "fading_model", "user_placement", "seed"},
                        "scenario");
    ScenarioConfig s;
    read_field(j, "n_x", s.n_x);
    read_field(j, "n_z", s.n_z);
    read_field(j, "n_a", s.n_a);
    read_field(j, "d_i_over_lambda", s.d_i_over_lambda);
    read_field(j, "k_users", s.k_users);
    read_field(j, "ap_position", s.ap_position);
    read_field(j, "irs_position", s.irs_position);
    read_field(j, "user_ring_radius", s.user_ring_radius);
    read_field(j, "xi0_db", s.xi0_db);
    read_field(j, "gamma_ai", s.gamma_ai);
    read_field(j, "gamma_iu", s.gamma_iu);
    read_field(j, "kappa_ai_db", s.kappa_ai_db);
    read_field(j, "kappa_iu_db", s.kappa_iu_db);
    read_field(j, "noise_power_dbm", s.noise_power_dbm);
    read_field(j, "gamma_gap_db", s.gamma_gap_db);
    read_field(j, "seed", s.seed);
    std::string text;
    if (j.contains("fading_model"))
    {
        read_field(j, "fading_model", text);
        s.fading_model = fading_model_from_string(text);
    }
    if (j.contains("user_placement"))
    {
        read_field(j, "user_placement", text);
        s.user_placement = user_placement_from_string(text);
    }
    return s;
}

// Mean and standard error (sample standard deviation / sqrt(n)), summed in index order.
std::pair<double, double> mean_and_stderr(const std::vector<double> &v)
{
    const auto n = static_cast<double>(v.size());
    double sum = 0.0;
    for (double x : v)
    {
        sum += x;
    }
    const double mean = sum / n;
    if (v.size() < 2)
    {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : v)
    {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::string fmt_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Cell
{
    Method method;
    int m;
    std::size_t row; // index into rows of the first snr point
};

constexpr std::uint64_t kChannelStream = 0;
constexpr std::uint64_t kRhPlanStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

} // namespace

std::string to_string(Method m)
{
    switch (m)
    {
    case Method::single:
        return "single";
    case Method::multi:
        return "multi";
    case Method::rh:
        return "rh";
    }
    return "?";
}

Method method_from_string(const std::string &s)
{
    if (s == "single")
    {
        return Method::single;
    }
    if (s == "multi")
    {
        return Method::multi;
    }
    if (s == "rh")
    {
        return Method::rh;
    }
    throw ConfigError("unknown method '" + s + "'");
}

std::vector<double> default_snr_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i)
    {
        grid.push_back(30.0 + 2.5 * i);
    }
    grid.push_back(46.4);
    std::sort(grid.begin(), grid.end());
    return grid;
}

void ExperimentConfig::validate() const
{
    scenario.validate();
    if (trials < 1)
    {
        throw ConfigError("trials must be at least 1");
    }
    if (snr_grid_db.empty())
    {
        throw ConfigError("snr_grid_db must not be empty");
    }
    for (double s : snr_grid_db)
    {
        if (!std::isfinite(s))
        {
            throw ConfigError("snr_grid_db entries must be finite");
        }
    }
    if (methods.empty())
    {
        throw ConfigError("methods must not be empty");
    }
    std::set<Method> seen(methods.begin(), methods.end());
    if (seen.size() != methods.size())
    {
        throw ConfigError("methods contains duplicates");
    }
    const bool needs_m = seen.contains(Method::multi) || seen.contains(Method::rh);
    if (needs_m && m_values.empty())
    {
        throw ConfigError("m_values must not be empty for multi or rh");
    }
    for (int m : m_values)
    {
        try
        {
            (void)CodebookGeometry::make(scenario.n_x, m);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string("m_values: ") + e.what());
        }
    }
    if (frame_symbols < 0)
    {
        throw ConfigError("frame_symbols must be non-negative");
    }
}

ExperimentConfig parse_config(const json &j)
{
    reject_unknown_keys(j,
                        {"scenario", "snr_grid_db", "m_values", "methods", "trials", "output_dir", "noiseless", "trace",
                         "frame_symbols"},
                        "config");
    ExperimentConfig cfg;
    if (j.contains("scenario"))
    {
        cfg.scenario = parse_scenario(j.at("scenario"));
    }
    read_field(j, "snr_grid_db", cfg.snr_grid_db);
    read_field(j, "m_values", cfg.m_values);
    read_field(j, "trials", cfg.trials);
    read_field(j, "output_dir", cfg.output_dir);
    read_field(j, "noiseless", cfg.noiseless);
    read_field(j, "trace", cfg.trace);
    read_field(j, "frame_symbols", cfg.frame_symbols);
    if (j.contains("methods"))
    {
        std::vector<std::string> names;
        read_field(j, "methods", names);
        cfg.methods.clear();
        for (const auto &n : names)
        {
            cfg.methods.push_back(method_from_string(n));
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open config file " + path.string());
    }
    json j;
    try
    {
        in >> j;
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig &cfg)
{
    const auto &s = cfg.scenario;
    json scenario = {
        {"n_x", s.n_x},
        {"n_z", s.n_z},
        {"n_a", s.n_a},
        {"d_i_over_lambda", s.d_i_over_lambda},
        {"k_users", s.k_users},
        {"ap_position", s.ap_position},
        {"irs_position", s.irs_position},
        {"user_ring_radius", s.user_ring_radius},
        {"xi0_db", s.xi0_db},
        {"gamma_ai", s.gamma_ai},
        {"gamma_iu", s.gamma_iu},
        {"kappa_ai_db", s.kappa_ai_db},
        {"kappa_iu_db", s.kappa_iu_db},
        {"noise_power_dbm", s.noise_power_dbm},
        {"gamma_gap_db", s.gamma_gap_db},
        {"fading_model", to_string(s.fading_model)},
        {"user_placement", to_string(s.user_placement)},
        {"seed", s.seed},
    };
    std::vector<std::string> methods;
    for (auto m : cfg.methods)
    {
        methods.push_back(to_string(m));
    }
    return json{
        {"scenario", scenario},       {"snr_grid_db", cfg.snr_grid_db}, {"m_values", cfg.m_values},
        {"methods", methods},         {"trials", cfg.trials},           {"output_dir", cfg.output_dir},
        {"noiseless", cfg.noiseless}, {"trace", cfg.trace},             {"frame_symbols", cfg.frame_symbols},
    };
}

const MetricsRow &MetricsTable::find(Method method, int m, double snr_db) const
{
    for (const auto &row : rows)
    {
        if (row.method == method && row.m == m && std::abs(row.snr_db - snr_db) < 1e-9)
        {
            return row;
        }
    }
    throw std::out_of_range("no metrics row for " + to_string(method) + " m=" + std::to_string(m) +
                            " snr=" + fmt_double(snr_db));
}

double power_for_snr(double snr_db, const ScenarioConfig &cfg)
{
    const double ai = path_gain(cfg.xi0_db, cfg.ap_irs_distance(), cfg.gamma_ai);
    const double iu = path_gain(cfg.xi0_db, cfg.user_ring_radius, cfg.gamma_iu);
    const double nx = static_cast<double>(cfg.n_x);
    return std::pow(10.0, snr_db / 10.0) * cfg.noise_power_w() / (ai * iu * nx * nx * static_cast<double>(cfg.n_a));
}

double snr_for_power(double p_a, const ScenarioConfig &cfg)
{
    const double ai = path_gain(cfg.xi0_db, cfg.ap_irs_distance(), cfg.gamma_ai);
    const double iu = path_gain(cfg.xi0_db, cfg.user_ring_radius, cfg.gamma_iu);
    const double nx = static_cast<double>(cfg.n_x);
    return 10.0 * std::log10(p_a * ai * iu * nx * nx * static_cast<double>(cfg.n_a) / cfg.noise_power_w());
}

double rate_from_response(Complex response, double p_a, const ScenarioConfig &cfg)
{
    const double gap = std::pow(10.0, cfg.gamma_gap_db / 10.0);
    return std::log2(1.0 + p_a * std::norm(response) / (gap * cfg.noise_power_w()));
}

double achievable_rate(int index, const UserChannel &user, double p_a, const ScenarioConfig &cfg)
{
    const auto w = single_beam_codeword(index, static_cast<int>(user.effective_channel.size()));
    return rate_from_response(inner(user.effective_channel, w.coefficients()), p_a, cfg);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    // splitmix64 finalizer applied to a running combination of the keys
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ b);
}

MetricsTable run_experiment(const ExperimentConfig &cfg, std::ostream *trace)
{
    cfg.validate();
    const auto &sc = cfg.scenario;
    const std::size_t n_snr = cfg.snr_grid_db.size();
    const auto trials = static_cast<std::size_t>(cfg.trials);
    const double noise = sc.noise_power_w();

    std::vector<double> p_a(n_snr);
    for (std::size_t s = 0; s < n_snr; ++s)
    {
        p_a[s] = power_for_snr(cfg.snr_grid_db[s], sc);
    }

    MetricsTable table;
    table.has_effective_rate = cfg.frame_symbols > 0;
    std::vector<Cell> cells;
    for (Method method : cfg.methods)
    {
        const std::vector<int> ms = method == Method::single ? std::vector<int>{1} : cfg.m_values;
        for (int m : ms)
        {
            cells.push_back({method, m, table.rows.size()});
            const int symbols =
                method == Method::single ? sc.n_x : multi_beam_symbol_count(CodebookGeometry::make(sc.n_x, m));
            for (double snr : cfg.snr_grid_db)
            {
                MetricsRow row;
                row.method = method;
                row.m = m;
                row.snr_db = snr;
                row.training_symbols = symbols;
                row.trials = cfg.trials;
                row.trial_success.assign(trials, 0.0);
                row.trial_rate.assign(trials, 0.0);
                table.rows.push_back(std::move(row));
            }
        }
    }

    // Trial-invariant schedules.
    const auto codebook = single_beam_codebook(sc.n_x);
    std::vector<SweepPlan> plans;
    std::vector<std::vector<Codeword>> plan_words;
    for (const auto &cell : cells)
    {
        auto plan = build_sweep_plan(CodebookGeometry::make(sc.n_x, cell.m));
        plan_words.push_back(cell.method == Method::multi ? plan_codewords(plan) : std::vector<Codeword>{});
        plans.push_back(std::move(plan));
    }

    if (trace != nullptr)
    {
        *trace << "trial,user,method,m,snr_db,identified,optimal,success,rate\n";
    }
    const auto k_users = static_cast<std::size_t>(sc.k_users);
    char line[256];

    for (std::size_t t = 0; t < trials; ++t)
    {
        Rng channel_rng(derive_seed(sc.seed, t, kChannelStream));
        const auto azimuths = draw_user_azimuths(sc, channel_rng);
        const auto channels = realize_channels(sc, azimuths, channel_rng);
        const auto single_responses = sweep_responses(codebook, channels);

        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            const auto &cell = cells[c];
            std::optional<SweepPlan> rh_plan;
            const SweepResponses *responses = &single_responses;
            SweepResponses own;
            if (cell.method == Method::multi)
            {
                own = sweep_responses(plan_words[c], channels);
                responses = &own;
            }
            else if (cell.method == Method::rh)
            {
                rh_plan = build_rh_plan(plans[c].geometry(),
                                        derive_seed(sc.seed, t, kRhPlanStream + 16 * static_cast<std::uint64_t>(cell.m)),
                                        plans[c].total_symbols());
                own = sweep_responses(plan_codewords(*rh_plan), channels);
                responses = &own;
            }

            for (std::size_t s = 0; s < n_snr; ++s)
            {
                const std::uint64_t cell_key = (static_cast<std::uint64_t>(cell.method) << 40) |
                                               (static_cast<std::uint64_t>(cell.m) << 20) | s;
                Rng noise_rng(derive_seed(sc.seed ^ cell_key, t, kNoiseStream));
                const auto log = observe(*responses, p_a[s], noise, noise_rng, cfg.noiseless);

                std::vector<int> ids;
                switch (cell.method)
                {
                case Method::single:
                    ids = identify_single_beam(log);
                    break;
                case Method::multi:
                    for (const auto &id : identify_multi_beam(log, plans[c]))
                    {
                        ids.push_back(id.index);
                    }
                    break;
                case Method::rh:
                    ids = identify_rh(log, *rh_plan);
                    break;
                }

                double hits = 0.0;
                double rate_sum = 0.0;
                for (std::size_t k = 0; k < k_users; ++k)
                {
                    const int optimal = channels.users[k].optimal_index;
                    const bool ok = ids[k] == optimal;
                    const double rate =
                        rate_from_response(single_responses[static_cast<std::size_t>(ids[k] - 1)][k], p_a[s], sc);
                    hits += ok ? 1.0 : 0.0;
                    rate_sum += rate;
                    if (trace != nullptr)
                    {
                        std::snprintf(line, sizeof line, "%zu,%zu,%s,%d,%.17g,%d,%d,%d,%.17g\n", t, k,
                                      to_string(cell.method).c_str(), cell.m, cfg.snr_grid_db[s], ids[k], optimal,
                                      ok ? 1 : 0, rate);
                        *trace << line;
                    }
                }
                auto &row = table.rows[cell.row + s];
                row.trial_success[t] = hits / static_cast<double>(k_users);
                row.trial_rate[t] = rate_sum / static_cast<double>(k_users);
            }
        }
    }

    for (auto &row : table.rows)
    {
        std::tie(row.success_rate, row.success_stderr) = mean_and_stderr(row.trial_success);
        std::tie(row.avg_rate, row.rate_stderr) = mean_and_stderr(row.trial_rate);
        if (cfg.frame_symbols > 0)
        {
            const double keep = 1.0 - static_cast<double>(row.training_symbols) / cfg.frame_symbols;
            row.effective_rate = row.avg_rate * std::max(0.0, keep);
        }
    }
    return table;
}

std::string results_csv(const MetricsTable &table)
{
    std::ostringstream out;
    out << "method,m,snr_db,training_symbols,success_rate,success_stderr,avg_rate,rate_stderr,trials";
    if (table.has_effective_rate)
    {
        out << ",effective_rate";
    }
    out << '\n';
    for (const auto &r : table.rows)
    {
        out << to_string(r.method) << ',' << r.m << ',' << fmt_double(r.snr_db) << ',' << r.training_symbols << ','
            << fmt_double(r.success_rate) << ',' << fmt_double(r.success_stderr) << ',' << fmt_double(r.avg_rate)
            << ',' << fmt_double(r.rate_stderr) << ',' << r.trials;
        if (table.has_effective_rate)
        {
            out << ',' << fmt_double(r.effective_rate);
        }
        out << '\n';
    }
    return out.str();
}

json results_json(const MetricsTable &table, const ExperimentConfig &cfg)
{
    json rows = json::array();
    for (const auto &r : table.rows)
    {
        json row = {
            {"method", to_string(r.method)},
            {"m", r.m},
            {"snr_db", r.snr_db},
            {"training_symbols", r.training_symbols},
            {"success_rate", r.success_rate},
            {"success_stderr", r.success_stderr},
            {"avg_rate", r.avg_rate},
            {"rate_stderr", r.rate_stderr},
            {"trials", r.trials},
        };
        if (table.has_effective_rate)
        {
            row["effective_rate"] = r.effective_rate;
        }
        rows.push_back(std::move(row));
    }
    return json{
        {"version", kVersion},
        {"seed", cfg.scenario.seed},
        {"config", to_json(cfg)},
        {"rows", rows},
    };
}

void emit_results(const MetricsTable &table, const ExperimentConfig &cfg)
{
    if (cfg.methods.empty() || table.rows.empty())
    {
        throw ConfigError("refusing to write an empty results table");
    }
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
    {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }

    const auto write = [](const std::filesystem::path &path, const std::string &content) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            throw IoError("cannot open " + path.string() + " for writing");
        }
        out << content;
        if (!out)
        {
            throw IoError("write to " + path.string() + " failed");
        }
    };
    write(dir / "results.csv", results_csv(table));
    write(dir / "results.json", results_json(table, cfg).dump(2) + "\n");
}

PairedDifference paired_difference(const std::vector<double> &a, const std::vector<double> &b)
{
    if (a.size() != b.size() || a.empty())
    {
        throw std::invalid_argument("paired difference needs equal, non-empty samples");
    }
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        d[i] = a[i] - b[i];
    }
    const auto [mean, se] = mean_and_stderr(d);
    return {mean, se};
}

} // namespace irsbt
