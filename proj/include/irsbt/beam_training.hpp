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
#include "irsbt/sweep_plan.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace irsbt
{

class ProtocolError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Received power per training symbol and user, in W. Symbols are in
/// transmission order, so SweepPlan::symbol_index maps (r, b) into it.
class ObservationLog
{
  public:
    ObservationLog() = default;
    explicit ObservationLog(std::vector<std::vector<double>> per_symbol);

    int symbol_count() const noexcept { return static_cast<int>(power_.size()); }
    int user_count() const noexcept { return power_.empty() ? 0 : static_cast<int>(power_.front().size()); }
    double power(int symbol, int user) const;

  private:
    std::vector<std::vector<double>> power_;
};

/// Noiseless received amplitudes f_k^H v, one vector of per-user values per transmitted codeword.
using SweepResponses = std::vector<ComplexVector>;

/// Per-user result of threshold-based multi-beam identification.
struct Identification
{
    int index = 0;
    int best_slot = 0;
    double threshold = 0.0;
    /// candidates[r-1] is the candidate set after round r, ascending.
    std::vector<std::vector<int>> candidates;
};

ComplexVector sounding_response(const Codeword &v, const ChannelRealization &channels);
SweepResponses sweep_responses(std::span<const Codeword> codewords, const ChannelRealization &channels);

/// |sqrt(p_a) f_k^H v + n_k|^2 with n_k ~ CN(0, noise_power); the noise term is dropped when noiseless.
ObservationLog observe(const SweepResponses &responses, double p_a, double noise_power, Rng &rng, bool noiseless);

std::vector<double> observe_symbol(const Codeword &v, const ChannelRealization &channels, double p_a, Rng &rng,
                                   bool noiseless = false);

std::vector<Codeword> single_beam_codebook(int n_x);
/// Composite codeword of every bin, in transmission order.
std::vector<Codeword> plan_codewords(const SweepPlan &plan);

// Exhaustive single-beam training over all N_x codewords.
ObservationLog run_single_beam_sweep(const ChannelRealization &channels, double p_a, Rng &rng,
                                     bool noiseless = false);
std::vector<int> identify_single_beam(const ObservationLog &log);
std::vector<int> run_single_beam(const ChannelRealization &channels, double p_a, Rng &rng, bool noiseless = false);

// Works for both the multi-beam plan and the random-hashing plan.
ObservationLog run_multi_beam_sweep(const SweepPlan &plan, const ChannelRealization &channels, double p_a, Rng &rng,
                                    bool noiseless = false);

/// Best round-1 bin, then one binary power decision per later round against
/// half the best round-1 power. Throws ProtocolError if the log does not match the plan.
std::vector<Identification> identify_multi_beam(const ObservationLog &log, const SweepPlan &plan);

/// Voting decoder for the random-hashing plan: each round's strongest bin
/// votes for all of its directions. Ties go to the larger accumulated
/// winning power, then to the smaller index.
std::vector<int> identify_rh(const ObservationLog &log, const SweepPlan &plan);

std::vector<int> run_rh(const SweepPlan &rh_plan, const ChannelRealization &channels, double p_a, Rng &rng,
                        bool noiseless = false);

/// Text trace: `symbol r b user power` lines followed by `user k round r candidates j...` lines.
void write_identification_trace(std::ostream &out, const ObservationLog &log, const SweepPlan &plan,
                                std::span<const Identification> ids);

} // namespace irsbt
