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

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace irsbt
{

namespace
{

void check_direction_index(int j, int n_x)
{
    if (j < 1 || j > n_x)
    {
        throw std::out_of_range("direction index " + std::to_string(j) + " outside 1.." + std::to_string(n_x));
    }
}

} // namespace

bool is_power_of_two(int v) noexcept
{
    return v > 0 && (v & (v - 1)) == 0;
}

int log2_exact(int v)
{
    if (!is_power_of_two(v))
    {
        throw std::invalid_argument(std::to_string(v) + " is not a power of two");
    }
    int r = 0;
    while ((1 << r) < v)
    {
        ++r;
    }
    return r;
}

CodebookGeometry CodebookGeometry::make(int n_x, int m)
{
    if (n_x < 1)
    {
        throw std::invalid_argument("n_x must be positive");
    }
    if (!is_power_of_two(m))
    {
        throw std::invalid_argument("sub-array count " + std::to_string(m) + " is not a power of two");
    }
    if (n_x % m != 0)
    {
        throw std::invalid_argument("sub-array count " + std::to_string(m) + " does not divide n_x = " +
                                    std::to_string(n_x));
    }
    const int l = n_x / m;
    if (m > 1 && l % 2 != 0)
    {
        throw std::invalid_argument("sub-array length n_x/m = " + std::to_string(l) + " must be even");
    }
    return CodebookGeometry{n_x, m, l};
}

int CodebookGeometry::rounds() const noexcept
{
    int r = 1;
    for (int v = m; v > 1; v >>= 1)
    {
        ++r;
    }
    return r;
}

SpatialDirection center_direction(int j, int n_x)
{
    if (n_x < 1)
    {
        throw std::invalid_argument("n_x must be positive");
    }
    check_direction_index(j, n_x);
    return SpatialDirection::wrap(-1.0 + static_cast<double>(2 * j - 1) / static_cast<double>(n_x));
}

Codeword single_beam_codeword(int j, int n_x)
{
    return Codeword(steering_vector(center_direction(j, n_x), static_cast<std::size_t>(n_x)));
}

Codeword subarray_codeword(int m_idx, int j, const CodebookGeometry &geo)
{
    if (m_idx < 1 || m_idx > geo.m)
    {
        throw std::out_of_range("sub-array index " + std::to_string(m_idx) + " outside 1.." + std::to_string(geo.m));
    }
    const auto full = single_beam_codeword(j, geo.n_x);
    const auto begin = full.coefficients().begin() + static_cast<std::ptrdiff_t>(m_idx - 1) * geo.l;
    return Codeword(ComplexVector(begin, begin + geo.l));
}

Codeword composite_codeword(std::span<const int> assignment, const CodebookGeometry &geo)
{
    if (static_cast<int>(assignment.size()) != geo.m)
    {
        throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " directions, expected " +
                                    std::to_string(geo.m));
    }
    ComplexVector out;
    out.reserve(static_cast<std::size_t>(geo.n_x));
    for (int m = 1; m <= geo.m; ++m)
    {
        const auto part = subarray_codeword(m, assignment[static_cast<std::size_t>(m - 1)], geo);
        out.insert(out.end(), part.coefficients().begin(), part.coefficients().end());
    }
    return Codeword(std::move(out));
}

void write_codebook(std::ostream &out, int n_x)
{
    char buf[64];
    for (int j = 1; j <= n_x; ++j)
    {
        const auto alpha = center_direction(j, n_x);
        const auto w = single_beam_codeword(j, n_x);
        std::snprintf(buf, sizeof buf, "%d %.12g", j, alpha.value());
        out << buf;
        for (const auto &c : w.coefficients())
        {
            const double turns = SpatialDirection::wrap(std::arg(c) / std::numbers::pi).value();
            std::snprintf(buf, sizeof buf, " %.12g", turns);
            out << buf;
        }
        out << '\n';
    }
}

} // namespace irsbt
