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
#include "irsbt/beam_training.hpp"

#include "irsbt/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

namespace irsbt
{

namespace
{

void check_log(const ObservationLog &log, const SweepPlan &plan)
{
    if (log.symbol_count() != plan.total_symbols())
    {
        throw ProtocolError("observation log holds " + std::to_string(log.symbol_count()) + " symbols, plan expects " +
                            std::to_string(plan.total_symbols()));
    }
    if (log.user_count() == 0)
    {
        throw ProtocolError("observation log has no users");
    }
}

// Strongest slot of a round; ties go to the smaller slot.
int best_slot(const ObservationLog &log, const SweepPlan &plan, int round, int user)
{
    const int slots = static_cast<int>(plan.rounds()[static_cast<std::size_t>(round - 1)].size());
    int best = 1;
    double best_power = log.power(plan.symbol_index(round, 1), user);
    for (int b = 2; b <= slots; ++b)
    {
        const double p = log.power(plan.symbol_index(round, b), user);
        if (p > best_power)
        {
            best = b;
            best_power = p;
        }
    }
    return best;
}

} // namespace

ObservationLog::ObservationLog(std::vector<std::vector<double>> per_symbol) : power_(std::move(per_symbol))
{
    const std::size_t users = power_.empty() ? 0 : power_.front().size();
    for (const auto &row : power_)
    {
        if (row.size() != users)
        {
            throw ProtocolError("observation log rows have different user counts");
        }
        for (double p : row)
        {
            if (!(p >= 0.0) || !std::isfinite(p))
            {
                throw ProtocolError("received powers must be finite and non-negative");
            }
        }
    }
}

double ObservationLog::power(int symbol, int user) const
{
    if (symbol < 0 || symbol >= symbol_count() || user < 0 || user >= user_count())
    {
        throw ProtocolError("observation (" + std::to_string(symbol) + ", " + std::to_string(user) + ") missing");
    }
    return power_[static_cast<std::size_t>(symbol)][static_cast<std::size_t>(user)];
}

ComplexVector sounding_response(const Codeword &v, const ChannelRealization &channels)
{
    ComplexVector out;
    out.reserve(channels.users.size());
    for (const auto &user : channels.users)
    {
        out.push_back(inner(user.effective_channel, v.coefficients()));
    }
    return out;
}

SweepResponses sweep_responses(std::span<const Codeword> codewords, const ChannelRealization &channels)
{
    SweepResponses out;
    out.reserve(codewords.size());
    for (const auto &v : codewords)
    {
        out.push_back(sounding_response(v, channels));
    }
    return out;
}

ObservationLog observe(const SweepResponses &responses, double p_a, double noise_power, Rng &rng, bool noiseless)
{
    const double amplitude = std::sqrt(p_a);
    std::vector<std::vector<double>> power;
    power.reserve(responses.size());
    for (const auto &symbol : responses)
    {
        std::vector<double> row(symbol.size());
        for (std::size_t k = 0; k < symbol.size(); ++k)
        {
            Complex y = amplitude * symbol[k];
            if (!noiseless)
            {
                y += draw_complex_gaussian(noise_power, rng);
            }
            row[k] = std::norm(y);
        }
        power.push_back(std::move(row));
    }
    return ObservationLog(std::move(power));
}

std::vector<double> observe_symbol(const Codeword &v, const ChannelRealization &channels, double p_a, Rng &rng,
                                   bool noiseless)
{
    const SweepResponses responses{sounding_response(v, channels)};
    const auto log = observe(responses, p_a, channels.noise_power_w, rng, noiseless);
    std::vector<double> out(static_cast<std::size_t>(log.user_count()));
    for (int k = 0; k < log.user_count(); ++k)
    {
        out[static_cast<std::size_t>(k)] = log.power(0, k);
    }
    return out;
}

std::vector<Codeword> single_beam_codebook(int n_x)
{
    std::vector<Codeword> out;
    out.reserve(static_cast<std::size_t>(n_x));
    for (int j = 1; j <= n_x; ++j)
    {
        out.push_back(single_beam_codeword(j, n_x));
    }
    return out;
}

std::vector<Codeword> plan_codewords(const SweepPlan &plan)
{
    std::vector<Codeword> out;
    out.reserve(static_cast<std::size_t>(plan.total_symbols()));
    for (const auto &round : plan.rounds())
    {
        for (const auto &bin : round)
        {
            out.push_back(composite_codeword(bin.directions, plan.geometry()));
        }
    }
    return out;
}

ObservationLog run_single_beam_sweep(const ChannelRealization &channels, double p_a, Rng &rng, bool noiseless)
{
    const auto codebook = single_beam_codebook(channels.n_x());
    return observe(sweep_responses(codebook, channels), p_a, channels.noise_power_w, rng, noiseless);
}

std::vector<int> identify_single_beam(const ObservationLog &log)
{
    std::vector<int> out(static_cast<std::size_t>(log.user_count()));
    for (int k = 0; k < log.user_count(); ++k)
    {
        int best = 0;
        for (int s = 1; s < log.symbol_count(); ++s)
        {
            if (log.power(s, k) > log.power(best, k))
            {
                best = s;
            }
        }
        out[static_cast<std::size_t>(k)] = best + 1;
    }
    return out;
}

std::vector<int> run_single_beam(const ChannelRealization &channels, double p_a, Rng &rng, bool noiseless)
{
    return identify_single_beam(run_single_beam_sweep(channels, p_a, rng, noiseless));
}

ObservationLog run_multi_beam_sweep(const SweepPlan &plan, const ChannelRealization &channels, double p_a, Rng &rng,
                                    bool noiseless)
{
    if (plan.geometry().n_x != channels.n_x())
    {
        throw std::invalid_argument("plan and channel disagree on n_x");
    }
    const auto codewords = plan_codewords(plan);
    return observe(sweep_responses(codewords, channels), p_a, channels.noise_power_w, rng, noiseless);
}

std::vector<Identification> identify_multi_beam(const ObservationLog &log, const SweepPlan &plan)
{
    check_log(log, plan);
    std::vector<Identification> out;
    out.reserve(static_cast<std::size_t>(log.user_count()));

    for (int k = 0; k < log.user_count(); ++k)
    {
        Identification id;
        id.best_slot = best_slot(log, plan, 1, k);
        const Bin &first = plan.bin(1, id.best_slot);
        id.threshold = log.power(plan.symbol_index(1, id.best_slot), k) / 2.0;
        id.candidates.push_back(first.directions);

        for (int r = 2; r <= plan.round_count(); ++r)
        {
            const auto &round = plan.rounds()[static_cast<std::size_t>(r - 1)];
            const Bin *inspected = nullptr;
            for (const auto &bin : round)
            {
                const bool hit = std::any_of(first.directions.begin(), first.directions.end(),
                                             [&](int j) { return bin.contains(j); });
                if (hit)
                {
                    if (inspected != nullptr)
                    {
                        throw ProtocolError("more than one round-" + std::to_string(r) +
                                            " bin intersects the best round-1 bin");
                    }
                    inspected = &bin;
                }
            }
            if (inspected == nullptr)
            {
                throw ProtocolError("no round-" + std::to_string(r) + " bin intersects the best round-1 bin");
            }

            const double p = log.power(plan.symbol_index(r, inspected->slot), k);
            const auto &prev = id.candidates.back();
            std::vector<int> next;
            for (int j : prev)
            {
                if (inspected->contains(j) == (p >= id.threshold))
                {
                    next.push_back(j);
                }
            }
            id.candidates.push_back(std::move(next));
        }

        const auto &last = id.candidates.back();
        if (last.empty())
        {
            throw ProtocolError("candidate set became empty");
        }
        id.index = last.front();
        out.push_back(std::move(id));
    }
    return out;
}

std::vector<int> identify_rh(const ObservationLog &log, const SweepPlan &plan)
{
    check_log(log, plan);
    std::vector<int> out(static_cast<std::size_t>(log.user_count()));
    for (int k = 0; k < log.user_count(); ++k)
    {
        struct Tally
        {
            int votes = 0;
            double power = 0.0;
        };
        std::map<int, Tally> tally;
        for (int r = 1; r <= plan.round_count(); ++r)
        {
            const int b = best_slot(log, plan, r, k);
            const double p = log.power(plan.symbol_index(r, b), k);
            for (int j : plan.bin(r, b).directions)
            {
                auto &t = tally[j];
                ++t.votes;
                t.power += p;
            }
        }
        // std::map iterates ascending, so strict comparisons keep the smaller index on full ties.
        int best = 0;
        Tally best_tally{-1, 0.0};
        for (const auto &[j, t] : tally)
        {
            if (t.votes > best_tally.votes || (t.votes == best_tally.votes && t.power > best_tally.power))
            {
                best = j;
                best_tally = t;
            }
        }
        out[static_cast<std::size_t>(k)] = best;
    }
    return out;
}

std::vector<int> run_rh(const SweepPlan &rh_plan, const ChannelRealization &channels, double p_a, Rng &rng,
                        bool noiseless)
{
    return identify_rh(run_multi_beam_sweep(rh_plan, channels, p_a, rng, noiseless), rh_plan);
}

void write_identification_trace(std::ostream &out, const ObservationLog &log, const SweepPlan &plan,
                                std::span<const Identification> ids)
{
    char buf[128];
    for (const auto &round : plan.rounds())
    {
        for (const auto &bin : round)
        {
            const int s = plan.symbol_index(bin.round, bin.slot);
            for (int k = 0; k < log.user_count(); ++k)
            {
                std::snprintf(buf, sizeof buf, "symbol %d %d %d %.17g\n", bin.round, bin.slot, k, log.power(s, k));
                out << buf;
            }
        }
    }
    for (std::size_t k = 0; k < ids.size(); ++k)
    {
        for (std::size_t r = 0; r < ids[k].candidates.size(); ++r)
        {
            out << "user " << k << " round " << r + 1 << " candidates";
            for (int j : ids[k].candidates[r])
            {
                out << ' ' << j;
            }
            out << '\n';
        }
        out << "user " << k << " identified " << ids[k].index << '\n';
    }
}

} // namespace irsbt
