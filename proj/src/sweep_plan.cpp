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
#include "irsbt/sweep_plan.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace irsbt
{

bool Bin::contains(int j) const
{
    return std::binary_search(directions.begin(), directions.end(), j);
}

SweepPlan::SweepPlan(CodebookGeometry geometry, std::vector<std::vector<Bin>> rounds)
    : geometry_(geometry), rounds_(std::move(rounds))
{
    for (const auto &round : rounds_)
    {
        round_offsets_.push_back(total_symbols_);
        total_symbols_ += static_cast<int>(round.size());
        for (const auto &bin : round)
        {
            if (static_cast<int>(bin.directions.size()) != geometry_.m)
            {
                throw std::invalid_argument("bin size differs from sub-array count");
            }
            for (std::size_t i = 0; i < bin.directions.size(); ++i)
            {
                const int j = bin.directions[i];
                if (j < 1 || j > geometry_.n_x || (i > 0 && bin.directions[i - 1] >= j))
                {
                    throw std::invalid_argument("bin directions must be ascending indices in 1..n_x");
                }
            }
        }
    }
}

const Bin &SweepPlan::bin(int round, int slot) const
{
    return rounds_.at(static_cast<std::size_t>(round - 1)).at(static_cast<std::size_t>(slot - 1));
}

int SweepPlan::symbol_index(int round, int slot) const
{
    if (round < 1 || round > round_count() || slot < 1 ||
        slot > static_cast<int>(rounds_[static_cast<std::size_t>(round - 1)].size()))
    {
        throw std::out_of_range("no bin (" + std::to_string(round) + ", " + std::to_string(slot) + ") in plan");
    }
    return round_offsets_[static_cast<std::size_t>(round - 1)] + slot - 1;
}

int intra_set_distance(std::span<const int> directions)
{
    if (directions.size() < 2)
    {
        throw std::invalid_argument("intra-set distance needs at least two directions");
    }
    int best = std::numeric_limits<int>::max();
    for (std::size_t p = 0; p < directions.size(); ++p)
    {
        for (std::size_t q = p + 1; q < directions.size(); ++q)
        {
            best = std::min(best, std::abs(directions[p] - directions[q]));
        }
    }
    return best;
}

Bin round1_bin(int slot, const CodebookGeometry &geo)
{
    if (slot < 1 || slot > geo.l)
    {
        throw std::out_of_range("round-1 slot " + std::to_string(slot) + " outside 1.." + std::to_string(geo.l));
    }
    Bin bin{1, slot, {}};
    bin.directions.reserve(static_cast<std::size_t>(geo.m));
    for (int k = 0; k < geo.m; ++k)
    {
        bin.directions.push_back(slot + k * geo.l);
    }
    return bin;
}

Bin later_round_bin(int round, int slot, const CodebookGeometry &geo)
{
    if (round < 2 || round > geo.rounds())
    {
        throw std::out_of_range("round " + std::to_string(round) + " outside 2.." + std::to_string(geo.rounds()));
    }
    if (slot < 1 || slot > geo.l / 2)
    {
        throw std::out_of_range("slot " + std::to_string(slot) + " outside 1.." + std::to_string(geo.l / 2));
    }
    const auto first = round1_bin(slot, geo).directions;
    const auto second = round1_bin(slot + geo.l / 2, geo).directions;
    const int seg = geo.m >> (round - 1);

    Bin bin{round, slot, {}};
    bin.directions.reserve(static_cast<std::size_t>(geo.m));
    for (int s = 0; s < geo.m / seg / 2; ++s)
    {
        for (int i = 2 * s * seg; i < (2 * s + 1) * seg; ++i)
        {
            bin.directions.push_back(first[static_cast<std::size_t>(i)]);
        }
        for (int i = (2 * s + 1) * seg; i < (2 * s + 2) * seg; ++i)
        {
            bin.directions.push_back(second[static_cast<std::size_t>(i)]);
        }
    }
    std::sort(bin.directions.begin(), bin.directions.end());
    return bin;
}

int multi_beam_symbol_count(const CodebookGeometry &geo)
{
    return geo.l + geo.l * log2_exact(geo.m) / 2;
}

SweepPlan build_sweep_plan(const CodebookGeometry &geo)
{
    // Re-validate: the geometry may have been assembled by hand.
    const auto checked = CodebookGeometry::make(geo.n_x, geo.m);
    std::vector<std::vector<Bin>> rounds(static_cast<std::size_t>(checked.rounds()));
    for (int b = 1; b <= checked.l; ++b)
    {
        rounds[0].push_back(round1_bin(b, checked));
    }
    for (int r = 2; r <= checked.rounds(); ++r)
    {
        for (int b = 1; b <= checked.l / 2; ++b)
        {
            rounds[static_cast<std::size_t>(r - 1)].push_back(later_round_bin(r, b, checked));
        }
    }
    return SweepPlan(checked, std::move(rounds));
}

int max_min_intra_bin_distance(const SweepPlan &plan, int round)
{
    if (round < 1 || round > plan.round_count())
    {
        throw std::out_of_range("round " + std::to_string(round) + " not in plan");
    }
    int best = std::numeric_limits<int>::max();
    for (const auto &bin : plan.rounds()[static_cast<std::size_t>(round - 1)])
    {
        best = std::min(best, intra_set_distance(bin.directions));
    }
    return best;
}

SweepPlan build_rh_plan(const CodebookGeometry &geo, std::uint64_t seed, int budget)
{
    const auto checked = CodebookGeometry::make(geo.n_x, geo.m);
    if (budget < checked.l)
    {
        throw std::invalid_argument("random-hashing budget " + std::to_string(budget) +
                                    " is below the round-1 length " + std::to_string(checked.l));
    }
    std::vector<std::vector<Bin>> rounds(1);
    for (int b = 1; b <= checked.l; ++b)
    {
        rounds[0].push_back(round1_bin(b, checked));
    }

    std::mt19937_64 rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(checked.n_x));
    int remaining = budget - checked.l;
    while (remaining > 0)
    {
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        const int round = static_cast<int>(rounds.size()) + 1;
        const int slots = std::min(remaining, checked.l);
        std::vector<Bin> bins;
        for (int b = 1; b <= slots; ++b)
        {
            const auto first = perm.begin() + static_cast<std::ptrdiff_t>(b - 1) * checked.m;
            Bin bin{round, b, std::vector<int>(first, first + checked.m)};
            std::sort(bin.directions.begin(), bin.directions.end());
            bins.push_back(std::move(bin));
        }
        rounds.push_back(std::move(bins));
        remaining -= slots;
    }
    return SweepPlan(checked, std::move(rounds));
}

void write_plan(std::ostream &out, const SweepPlan &plan)
{
    for (const auto &round : plan.rounds())
    {
        for (const auto &bin : round)
        {
            out << bin.round << ',' << bin.slot;
            for (int j : bin.directions)
            {
                out << ',' << j;
            }
            out << '\n';
        }
    }
}

} // namespace irsbt
