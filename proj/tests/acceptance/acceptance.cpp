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
// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "irsbt/array_math.hpp"
#include "irsbt/beam_training.hpp"
#include "irsbt/codebook.hpp"
#include "irsbt/experiment.hpp"
#include "irsbt/sweep_plan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace irsbt;

namespace
{

constexpr double kOneSided95 = 1.645;
constexpr double kHeadlineSnr = 46.4;

int failures = 0;

void report(int id, const std::string &name, bool ok, const std::string &detail, double seconds)
{
    std::printf("[%s] %2d %s (%.1f s) %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), seconds, detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

class Stopwatch
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double t_stat(const PairedDifference &d)
{
    if (d.standard_error == 0.0)
    {
        return d.mean > 0.0 ? std::numeric_limits<double>::infinity()
                            : (d.mean < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0);
    }
    return d.mean / d.standard_error;
}

void training_cost()
{
    Stopwatch sw;
    const int a = build_sweep_plan(CodebookGeometry::make(160, 2)).total_symbols();
    const int b = build_sweep_plan(CodebookGeometry::make(160, 4)).total_symbols();
    const int c = build_sweep_plan(CodebookGeometry::make(160, 8)).total_symbols();
    const int d = build_sweep_plan(CodebookGeometry::make(32, 4)).total_symbols();
    const bool ok = a == 120 && b == 80 && c == 50 && d == 16;
    report(1, "training-symbol counts", ok,
           "160/M=2,4,8 -> " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
               "; 32/M=4 -> " + std::to_string(d),
           sw.seconds());
}

void composite_equivalence()
{
    Stopwatch sw;
    double worst = 0.0;
    for (int n_x : {32, 160})
    {
        for (int m = 1; m <= n_x / 2; m *= 2)
        {
            if (n_x % m != 0 || (m > 1 && (n_x / m) % 2 != 0))
            {
                continue;
            }
            const auto geo = CodebookGeometry::make(n_x, m);
            for (int j = 1; j <= n_x; ++j)
            {
                const auto comp = composite_codeword(std::vector<int>(static_cast<std::size_t>(m), j), geo);
                const auto full = single_beam_codeword(j, n_x);
                for (std::size_t i = 0; i < full.size(); ++i)
                {
                    worst = std::max(worst, std::abs(comp[i] - full[i]));
                }
            }
        }
    }
    report(2, "uniform composite equals single-beam codeword", worst <= 1e-14, fmt("max error %.3g", worst),
           sw.seconds());
}

void bin_schedule()
{
    Stopwatch sw;
    const auto plan = build_sweep_plan(CodebookGeometry::make(32, 4));
    using D = std::vector<int>;
    const bool bins = plan.bin(1, 1).directions == D{1, 9, 17, 25} && plan.bin(1, 5).directions == D{5, 13, 21, 29} &&
                      plan.bin(2, 1).directions == D{1, 9, 21, 29} && plan.bin(3, 1).directions == D{1, 13, 17, 29};
    const int d1 = max_min_intra_bin_distance(plan, 1);
    const int d2 = max_min_intra_bin_distance(plan, 2);
    const int d3 = max_min_intra_bin_distance(plan, 3);
    report(3, "bin schedule for N_x=32, M=4", bins && d1 == 8 && d2 == 8 && d3 == 4,
           std::string(bins ? "bins match" : "bins differ") + "; distances " + std::to_string(d1) + "," +
               std::to_string(d2) + "," + std::to_string(d3),
           sw.seconds());
}

void worked_example()
{
    Stopwatch sw;
    const auto plan = build_sweep_plan(CodebookGeometry::make(32, 4));
    std::vector<std::vector<double>> p(16, std::vector<double>{0.1});
    p[static_cast<std::size_t>(plan.symbol_index(1, 5))][0] = 10.0;
    p[static_cast<std::size_t>(plan.symbol_index(1, 1))][0] = 2.0;
    p[static_cast<std::size_t>(plan.symbol_index(2, 1))][0] = 1.0;
    p[static_cast<std::size_t>(plan.symbol_index(3, 1))][0] = 8.0;
    const auto id = identify_multi_beam(ObservationLog(p), plan).at(0);
    using D = std::vector<int>;
    const bool ok = id.candidates.size() == 3 && id.candidates[0] == D{5, 13, 21, 29} &&
                    id.candidates[1] == D{5, 13} && id.candidates[2] == D{13} && id.index == 13;
    std::ostringstream trace;
    for (const auto &c : id.candidates)
    {
        trace << '{';
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            trace << (i ? "," : "") << c[i];
        }
        trace << "} ";
    }
    report(4, "worked identification example", ok, trace.str() + "-> " + std::to_string(id.index), sw.seconds());
}

void structural_invariants()
{
    Stopwatch sw;
    const ScenarioConfig sc;
    const int trials = 1500;
    long checked = 0;
    long violations = 0;
    std::vector<SweepPlan> plans;
    std::vector<std::vector<Codeword>> words;
    for (int m : {2, 4, 8})
    {
        plans.push_back(build_sweep_plan(CodebookGeometry::make(sc.n_x, m)));
        words.push_back(plan_codewords(plans.back()));
    }
    const std::vector<double> snrs{30.0, kHeadlineSnr, 55.0};
    for (int t = 0; t < trials; ++t)
    {
        Rng rng(derive_seed(sc.seed, static_cast<std::uint64_t>(t), 0xACCE));
        const auto az = draw_user_azimuths(sc, rng);
        const auto ch = realize_channels(sc, az, rng);
        for (std::size_t i = 0; i < plans.size(); ++i)
        {
            const auto responses = sweep_responses(words[i], ch);
            const int m = plans[i].geometry().m;
            for (double snr : snrs)
            {
                const auto log = observe(responses, power_for_snr(snr, sc), ch.noise_power_w, rng, false);
                for (const auto &id : identify_multi_beam(log, plans[i]))
                {
                    ++checked;
                    bool ok = static_cast<int>(id.candidates.size()) == plans[i].round_count();
                    for (std::size_t r = 0; ok && r < id.candidates.size(); ++r)
                    {
                        ok = static_cast<int>(id.candidates[r].size()) == (m >> r);
                    }
                    const auto &first = id.candidates.front();
                    ok = ok && std::find(first.begin(), first.end(), id.index) != first.end();
                    violations += ok ? 0 : 1;
                }
            }
        }
    }
    report(5, "candidate-set invariants over noisy trials", violations == 0,
           std::to_string(checked) + " identifications, " + std::to_string(violations) + " violations", sw.seconds());
}

void noiseless_oracle()
{
    Stopwatch sw;
    const int n_x = 32;
    ScenarioConfig cfg;
    cfg.n_x = n_x;
    cfg.k_users = n_x;
    cfg.d_i_over_lambda = 1.0;
    cfg.kappa_ai_db = std::numeric_limits<double>::infinity();
    cfg.kappa_iu_db = std::numeric_limits<double>::infinity();
    std::vector<double> az;
    for (int j = 1; j <= n_x; ++j)
    {
        az.push_back(std::acos(center_direction(j, n_x).value() / 2.0));
    }
    Rng rng(1);
    const auto ch = realize_channels(cfg, az, rng);

    int grid_mismatch = 0;
    int single_fail = 0;
    int multi_fail = 0;
    const auto single = run_single_beam(ch, 1.0, rng, true);
    const auto plan = build_sweep_plan(CodebookGeometry::make(n_x, 2));
    const auto multi = identify_multi_beam(run_multi_beam_sweep(plan, ch, 1.0, rng, true), plan);
    std::string flagged;
    for (int j = 1; j <= n_x; ++j)
    {
        const auto k = static_cast<std::size_t>(j - 1);
        grid_mismatch += ch.users[k].optimal_index != j;
        single_fail += single[k] != j;
        if (multi[k].index != j)
        {
            ++multi_fail;
            flagged += " " + std::to_string(j);
        }
    }
    report(6, "noiseless on-grid oracle (N_x=32)", grid_mismatch == 0 && single_fail == 0 && multi_fail == 0,
           "single failures " + std::to_string(single_fail) + ", multi M=2 failures " + std::to_string(multi_fail) +
               (flagged.empty() ? "" : " at" + flagged),
           sw.seconds());
}

// Per-trial least-squares slope of success against SNR, then its mean and standard error.
PairedDifference slope_across_grid(const MetricsTable &table, Method method, int m, const std::vector<double> &grid)
{
    double mean_x = 0.0;
    for (double x : grid)
    {
        mean_x += x;
    }
    mean_x /= static_cast<double>(grid.size());
    double sxx = 0.0;
    for (double x : grid)
    {
        sxx += (x - mean_x) * (x - mean_x);
    }
    const std::size_t trials = table.find(method, m, grid.front()).trial_success.size();
    std::vector<double> slopes(trials, 0.0);
    for (double x : grid)
    {
        const auto &row = table.find(method, m, x);
        for (std::size_t t = 0; t < trials; ++t)
        {
            slopes[t] += (x - mean_x) * row.trial_success[t] / sxx;
        }
    }
    return paired_difference(slopes, std::vector<double>(trials, 0.0));
}

void headline(const MetricsTable &table, const ExperimentConfig &cfg, double seconds)
{
    const auto &m2 = table.find(Method::multi, 2, kHeadlineSnr);
    const auto &m4 = table.find(Method::multi, 4, kHeadlineSnr);
    const auto &m8 = table.find(Method::multi, 8, kHeadlineSnr);
    const bool in_range = m4.success_rate >= 0.87 && m4.success_rate <= 0.96;
    const double t24 = t_stat(paired_difference(m2.trial_success, m4.trial_success));
    const double t48 = t_stat(paired_difference(m4.trial_success, m8.trial_success));
    bool beats_rh = true;
    std::string rh_detail;
    for (int m : {2, 4, 8})
    {
        const auto &multi = table.find(Method::multi, m, kHeadlineSnr);
        const auto &rh = table.find(Method::rh, m, kHeadlineSnr);
        const double t = t_stat(paired_difference(multi.trial_success, rh.trial_success));
        beats_rh = beats_rh && t > kOneSided95;
        rh_detail += fmt(" M=%g %.3f>%.3f", m, multi.success_rate, rh.success_rate);
    }
    const auto slope = slope_across_grid(table, Method::rh, 2, cfg.snr_grid_db);
    const double t_slope = t_stat(slope);
    const bool flat = t_slope <= kOneSided95;
    const auto &rh_lo = table.find(Method::rh, 2, cfg.snr_grid_db.front());
    const auto &rh_hi = table.find(Method::rh, 2, cfg.snr_grid_db.back());

    const bool ok = in_range && t24 > kOneSided95 && t48 > kOneSided95 && beats_rh && flat;
    std::string detail =
        fmt("multi M=4 at 46.4 dB %.4f", m4.success_rate) + (in_range ? " in [0.87,0.96]" : " OUTSIDE [0.87,0.96]");
    detail += fmt("; M2>M4 t=%.1f, M4>M8 t=%.1f", t24, t48);
    detail += std::string("; multi>rh") + (beats_rh ? "" : " NOT") + rh_detail;
    detail += fmt("; rh M=2 %.3f->%.3f, slope %.2e/dB", rh_lo.success_rate, rh_hi.success_rate, slope.mean);
    detail += fmt(" t=%.1f", t_slope) + (flat ? " (flat)" : " (rising)");
    report(7, "headline success-rate reproduction", ok, detail, seconds);
}

void rate_curves(const MetricsTable &table, const ExperimentConfig &cfg, double seconds)
{
    const double top = cfg.snr_grid_db.back();
    const auto &single = table.find(Method::single, 1, top);
    const auto &multi2 = table.find(Method::multi, 2, top);
    const double rel = std::abs(multi2.avg_rate - single.avg_rate) / single.avg_rate;
    bool below = true;
    double worst_t = std::numeric_limits<double>::infinity();
    for (double snr : cfg.snr_grid_db)
    {
        const auto d = paired_difference(table.find(Method::multi, 4, snr).trial_rate,
                                         table.find(Method::multi, 8, snr).trial_rate);
        worst_t = std::min(worst_t, t_stat(d));
        below = below && t_stat(d) > kOneSided95;
    }
    report(8, "rate-curve reproduction", rel <= 0.05 && below,
           fmt("at %.1f dB multi M=2 %.4f vs single %.4f", top, multi2.avg_rate, single.avg_rate) +
               fmt(" (%.2f%%); M=8 below M=4 at every SNR, min t=%.1f", 100.0 * rel, worst_t),
           seconds);
}

void identities()
{
    Stopwatch sw;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dir(-3.0, 3.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> size(1, 64);
    double worst_decouple = 0.0;
    double worst_cascade = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto nx = static_cast<std::size_t>(size(rng));
        const auto nz = static_cast<std::size_t>(size(rng));
        const double phi = dir(rng);
        const double chi = dir(rng);
        ComplexVector vx(nx);
        ComplexVector vz(nz);
        for (auto &c : vx)
        {
            c = std::polar(1.0, ph(rng));
        }
        for (auto &c : vz)
        {
            c = std::polar(1.0, ph(rng));
        }
        const Complex joint = inner(kron(steering_vector(phi, nx), steering_vector(chi, nz)), kron(vx, vz));
        const Complex split =
            inner(steering_vector(wrap_direction(phi), nx), vx) * inner(steering_vector(wrap_direction(chi), nz), vz);
        worst_decouple = std::max(worst_decouple, std::abs(joint - split));

        // conj(b_t) . a_r == conj(u(phi_t - phi_r) x u(psi_t - psi_r))
        const double pt = dir(rng);
        const double pr = dir(rng);
        const double st = dir(rng);
        const double sr = dir(rng);
        const auto lhs = hadamard(conj(kron(steering_vector(pt, nx), steering_vector(st, nz))),
                                  kron(steering_vector(pr, nx), steering_vector(sr, nz)));
        const auto rhs = conj(kron(steering_vector(pt - pr, nx), steering_vector(st - sr, nz)));
        for (std::size_t n = 0; n < lhs.size(); ++n)
        {
            worst_cascade = std::max(worst_cascade, std::abs(lhs[n] - rhs[n]));
        }
    }
    const ScenarioConfig sc;
    double worst_snr = 0.0;
    for (int i = 0; i <= 100; ++i)
    {
        const double snr = -20.0 + i;
        worst_snr = std::max(worst_snr, std::abs(snr_for_power(power_for_snr(snr, sc), sc) - snr));
    }
    const bool ok = worst_decouple <= 1e-10 && worst_cascade <= 1e-10 && worst_snr <= 1e-9;
    report(9, "numerical identities", ok,
           fmt("decoupling %.2e, cascade %.2e, SNR round trip %.2e dB", worst_decouple, worst_cascade, worst_snr),
           sw.seconds());
}

} // namespace

int main()
{
    training_cost();
    composite_equivalence();
    bin_schedule();
    worked_example();
    structural_invariants();
    noiseless_oracle();

    ExperimentConfig cfg;
    Stopwatch sw;
    const auto table = run_experiment(cfg);
    const double headline_seconds = sw.seconds();
    headline(table, cfg, headline_seconds);
    rate_curves(table, cfg, headline_seconds);
    identities();

    Stopwatch rerun;
    const auto again = run_experiment(cfg);
    const bool same = results_csv(table) == results_csv(again);
    report(10, "byte-identical results for a repeated run", same,
           same ? "results.csv identical" : "results.csv differs", rerun.seconds());

    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
