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

#include "irsbt/codebook.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace irsbt
{

/// Directions steered during one training symbol. `directions` is strictly
/// ascending and sub-array m (1-based) steers directions[m-1].
struct Bin
{
    int round = 0;
    int slot = 0;
    std::vector<int> directions;

    bool contains(int j) const;
};

/// Ordered training schedule: rounds in order, each round's bins in slot order.
class SweepPlan
{
  public:
    SweepPlan(CodebookGeometry geometry, std::vector<std::vector<Bin>> rounds);

    const CodebookGeometry &geometry() const noexcept { return geometry_; }
    const std::vector<std::vector<Bin>> &rounds() const noexcept { return rounds_; }
    int round_count() const noexcept { return static_cast<int>(rounds_.size()); }
    int total_symbols() const noexcept { return total_symbols_; }

    /// 1-based round and slot. Throws std::out_of_range.
    const Bin &bin(int round, int slot) const;
    /// 0-based position of B(round, slot) in the transmitted symbol sequence.
    int symbol_index(int round, int slot) const;

  private:
    CodebookGeometry geometry_;
    std::vector<std::vector<Bin>> rounds_;
    std::vector<int> round_offsets_;
    int total_symbols_ = 0;
};

/// Minimum absolute pairwise difference. Throws std::invalid_argument for fewer than two entries.
int intra_set_distance(std::span<const int> directions);

/// B(1, b) = {b, b + L, ..., b + (M-1)L}.
Bin round1_bin(int slot, const CodebookGeometry &geo);

/// B(r, b) for r >= 2: alternating segments of length M/2^(r-1) drawn from
/// B(1, b) and B(1, b + L/2), sorted ascending.
Bin later_round_bin(int round, int slot, const CodebookGeometry &geo);

/// Full multi-beam schedule: L bins in round 1 and L/2 bins in each of the log2(M) later rounds.
SweepPlan build_sweep_plan(const CodebookGeometry &geo);

/// L + L*log2(M)/2, the symbol count of build_sweep_plan(geo).
int multi_beam_symbol_count(const CodebookGeometry &geo);

int max_min_intra_bin_distance(const SweepPlan &plan, int round);

/// Random-hashing baseline: round 1 as in build_sweep_plan, followed by
/// rounds that hash a seeded random permutation of 1..N_x into L bins of M
/// directions, truncated so the plan holds exactly `budget` symbols.
/// Throws std::invalid_argument if budget < L.
SweepPlan build_rh_plan(const CodebookGeometry &geo, std::uint64_t seed, int budget);

/// One line per training symbol: `r,b,j_1,...,j_M`.
void write_plan(std::ostream &out, const SweepPlan &plan);

} // namespace irsbt
