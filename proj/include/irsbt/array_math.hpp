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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace irsbt
{

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Normalized spatial direction, always held in the half-open interval [-1, 1).
///
/// The steering vector is 2-periodic in its direction argument, so any real
/// phase progression can be reduced into this interval without changing the
/// array response. Construction goes through wrap() so the invariant holds.
class SpatialDirection
{
  public:
    SpatialDirection() = default;

    /// Reduces `raw` modulo 2 into [-1, 1). Throws std::invalid_argument for NaN/inf.
    static SpatialDirection wrap(double raw);

    double value() const noexcept { return value_; }

    friend bool operator==(SpatialDirection, SpatialDirection) = default;

  private:
    explicit SpatialDirection(double v) noexcept : value_(v) {}
    double value_ = 0.0;
};

/// Unit-modulus phase vector applied by the reflecting surface.
class Codeword
{
  public:
    /// Throws std::invalid_argument if empty or any |c| deviates from 1 by more than 1e-12.
    explicit Codeword(ComplexVector coefficients);

    const ComplexVector &coefficients() const noexcept { return coefficients_; }
    std::size_t size() const noexcept { return coefficients_.size(); }
    const Complex &operator[](std::size_t n) const { return coefficients_[n]; }

  private:
    ComplexVector coefficients_;
};

/// Unit-modulus tolerance enforced by Codeword.
inline constexpr double kUnitModulusTolerance = 1e-12;

SpatialDirection wrap_direction(double raw);

/// u(phi, n): element k is exp(-i*pi*k*phi). Throws std::invalid_argument for n == 0.
ComplexVector steering_vector(double phi, std::size_t n);
ComplexVector steering_vector(SpatialDirection phi, std::size_t n);

/// a^H b. Throws std::invalid_argument on length mismatch.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);

/// |u^H(phi, len(w)) w|
double beam_gain(const Codeword &w, SpatialDirection phi);

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// Elementwise product. Throws std::invalid_argument on length mismatch.
ComplexVector hadamard(std::span<const Complex> a, std::span<const Complex> b);

ComplexVector conj(std::span<const Complex> a);

} // namespace irsbt
