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
#include "irsbt/codebook.hpp"
#include "irsbt/experiment.hpp"
#include "irsbt/sweep_plan.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (!item.empty())
        {
            out.push_back(item);
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Beam training simulator for IRS-assisted multiuser downlinks"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out_dir;
    std::string methods;
    std::string m_values;
    bool noiseless = false;
    bool trace = false;

    auto *run = app.add_subcommand("run", "Run the Monte Carlo experiment and write results");
    run->add_option("--config", config_path, "JSON experiment config")->required();
    run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--trials", trials, "Override the trial count");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--methods", methods, "Comma-separated subset of single,multi,rh");
    run->add_option("--m", m_values, "Comma-separated sub-array counts, e.g. 2,4,8");
    run->add_flag("--noiseless", noiseless, "Drop receiver noise during training");
    run->add_flag("--trace", trace, "Write per-trial trace.txt");

    int nx = 0;
    int m = 0;
    auto *dump = app.add_subcommand("dump-plan", "Print the multi-beam sweep schedule as r,b,j_1,...,j_M");
    dump->add_option("--nx", nx, "Horizontal element count")->required();
    dump->add_option("--m", m, "Sub-array count")->required();

    auto *dump_cb = app.add_subcommand("dump-codebook", "Print the single-beam codebook phases (units of pi)");
    dump_cb->add_option("--nx", nx, "Horizontal element count")->required();

    auto *validate = app.add_subcommand("validate", "Check a config file");
    validate->add_option("--config", config_path, "JSON experiment config")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (*dump)
        {
            irsbt::write_plan(std::cout, irsbt::build_sweep_plan(irsbt::CodebookGeometry::make(nx, m)));
            return 0;
        }
        if (*dump_cb)
        {
            irsbt::write_codebook(std::cout, nx);
            return 0;
        }

        auto cfg = irsbt::load_config(config_path);
        if (*validate)
        {
            std::cout << "ok: " << cfg.methods.size() << " methods, " << cfg.snr_grid_db.size() << " SNR points, "
                      << cfg.trials << " trials\n";
            return 0;
        }

        if (seed)
        {
            cfg.scenario.seed = *seed;
        }
        if (trials)
        {
            cfg.trials = *trials;
        }
        if (!out_dir.empty())
        {
            cfg.output_dir = out_dir;
        }
        if (!methods.empty())
        {
            cfg.methods.clear();
            for (const auto &name : split_list(methods))
            {
                cfg.methods.push_back(irsbt::method_from_string(name));
            }
        }
        if (!m_values.empty())
        {
            cfg.m_values.clear();
            for (const auto &v : split_list(m_values))
            {
                try
                {
                    cfg.m_values.push_back(std::stoi(v));
                }
                catch (const std::exception &)
                {
                    throw irsbt::ConfigError("bad --m entry '" + v + "'");
                }
            }
        }
        cfg.noiseless = cfg.noiseless || noiseless;
        cfg.trace = cfg.trace || trace;
        cfg.validate();

        std::ofstream trace_file;
        if (cfg.trace)
        {
            std::filesystem::create_directories(cfg.output_dir);
            const auto path = std::filesystem::path(cfg.output_dir) / "trace.txt";
            trace_file.open(path);
            if (!trace_file)
            {
                throw irsbt::IoError("cannot open " + path.string() + " for writing");
            }
        }
        const auto table = irsbt::run_experiment(cfg, cfg.trace ? &trace_file : nullptr);
        irsbt::emit_results(table, cfg);
        std::cout << irsbt::results_csv(table);
        return 0;
    }
    catch (const irsbt::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
