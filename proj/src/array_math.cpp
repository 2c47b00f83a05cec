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
#include "irsbt/array_math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace irsbt
{

SpatialDirection SpatialDirection::wrap(double raw)
{
    if (!std::isfinite(raw))
    {
        throw std::invalid_argument("spatial direction must be finite");
    }
    double r = std::fmod(raw + 1.0, 2.0);
    if (r < 0.0)
    {
        r += 2.0;
    }
    double v = r - 1.0;
    // r + 2.0 can round up to exactly 2.0 for tiny negative remainders
    if (v >= 1.0)
    {
        v -= 2.0;
    }
    return SpatialDirection(v);
}

Codeword::Codeword(ComplexVector coefficients) : coefficients_(std::move(coefficients))
{
    if (coefficients_.empty())
    {
        throw std::invalid_argument("codeword must have at least one element");
    }
    for (std::size_t n = 0; n < coefficients_.size(); ++n)
    {
        if (std::abs(std::abs(coefficients_[n]) - 1.0) > kUnitModulusTolerance)
        {
            throw std::invalid_argument("codeword element " + std::to_string(n) + " is not unit modulus");
        }
    }
}

SpatialDirection wrap_direction(double raw)
{
    return SpatialDirection::wrap(raw);
}

ComplexVector steering_vector(double phi, std::size_t n)
{
    if (n == 0)
    {
        throw std::invalid_argument("steering vector size must be positive");
    }
    if (!std::isfinite(phi))
    {
        throw std::invalid_argument("steering direction must be finite");
    }
    ComplexVector u(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        // Reduce k*phi mod 2 before scaling by pi so large k keep full precision.
        const double turns = std::fmod(static_cast<double>(k) * phi, 2.0);
        u[k] = std::polar(1.0, -std::numbers::pi * turns);
    }
    return u;
}

ComplexVector steering_vector(SpatialDirection phi, std::size_t n)
{
    return steering_vector(phi.value(), n);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b)
{
    if (a.size() != b.size())
    {
        throw std::invalid_argument("inner product of vectors with different lengths");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < a.size(); ++n)
    {
        acc += std::conj(a[n]) * b[n];
    }
    return acc;
}

double beam_gain(const Codeword &w, SpatialDirection phi)
{
    const auto u = steering_vector(phi, w.size());
    return std::abs(inner(u, w.coefficients()));
}

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b)
{
    ComplexVector out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a)
    {
        for (const auto &y : b)
        {
            out.push_back(x * y);
        }
    }
    return out;
}

ComplexVector hadamard(std::span<const Complex> a, std::span<const Complex> b)
{
    if (a.size() != b.size())
    {
        throw std::invalid_argument("hadamard product of vectors with different lengths");
    }
    ComplexVector out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
    {
        out[n] = a[n] * b[n];
    }
    return out;
}

ComplexVector conj(std::span<const Complex> a)
{
    ComplexVector out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
    {
        out[n] = std::conj(a[n]);
    }
    return out;
}

} // namespace irsbt
