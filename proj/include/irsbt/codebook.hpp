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

#include <iosfwd>
#include <span>

namespace irsbt
{

/// Horizontal array split into `m` contiguous sub-arrays of `l` elements each.
///
/// `m` must be a power of two. For m > 1 the sub-array length must be even,
/// since later sweep rounds pair slot b with slot b + l/2. m == 1 is the
/// degenerate full-array case used by exhaustive single-beam training.
struct CodebookGeometry
{
    int n_x = 0;
    int m = 0;
    int l = 0;

    /// Throws std::invalid_argument if (n_x, m) violates the invariants above.
    static CodebookGeometry make(int n_x, int m);

    int rounds() const noexcept; // 1 + log2(m)
};

bool is_power_of_two(int v) noexcept;
int log2_exact(int v);

/// alpha(j) = -1 + (2j - 1)/n_x for the 1-based direction index j.
SpatialDirection center_direction(int j, int n_x);

/// Full-array codeword u(alpha(j), n_x).
Codeword single_beam_codeword(int j, int n_x);

/// Elements (m_idx-1)*l .. m_idx*l - 1 of single_beam_codeword(j, n_x); m_idx is 1-based.
Codeword subarray_codeword(int m_idx, int j, const CodebookGeometry &geo);

/// Concatenation of subarray_codeword(m, assignment[m-1]) over all sub-arrays.
Codeword composite_codeword(std::span<const int> assignment, const CodebookGeometry &geo);

/// Debug listing, one line per direction: `j alpha(j) p_0 ... p_{n-1}` with
/// element phases expressed in units of pi and reduced into [-1, 1).
void write_codebook(std::ostream &out, int n_x);

} // namespace irsbt
