// Copyright 2026 The clonebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Uhlmann fidelity in its squared convention,
//     F(chi, omega) = (Tr sqrt(sqrt(chi) omega sqrt(chi)))^2,
// and the angle Delta = arccos sqrt(F) built on it.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "clonebound/states.hpp"

namespace clonebound {

/// Angle in [0, pi/2]. Constructed from a fidelity clamped to [0, 1].
class Angle {
  public:
    constexpr Angle() = default;
    static Angle from_fidelity(double f);
    static Angle from_radians(double radians);

    constexpr double radians() const noexcept {
        return radians_;
    }

  private:
    explicit constexpr Angle(double r) : radians_(r) {
    }
    double radians_ = 0.0;
};

/// Throws DimensionMismatch. Result is clamped to [0, 1].
double fidelity(const DensityMatrix& chi, const DensityMatrix& omega);

Angle angle(const DensityMatrix& chi, const DensityMatrix& omega);

/// Delta(chi, rho) + Delta(omega, rho) - Delta(chi, omega); never below -1e-8.
double check_triangle(const DensityMatrix& chi, const DensityMatrix& omega, const DensityMatrix& rho);

struct DeviationBound {
    double lhs;  ///< |Tr(E chi) - Tr(E omega)|
    double rhs;  ///< sin Delta(chi, omega)
};

/// Throws InvalidEffect unless `effect` is Hermitian with spectrum in [0, 1].
DeviationBound measurement_deviation_bound(const DensityMatrix& chi,
                                           const DensityMatrix& omega,
                                           const ComplexMatrix& effect);

using StatePair = std::pair<DensityMatrix, DensityMatrix>;

/// prod_i F(chi_i, omega_i).
double fidelity_product(std::span<const StatePair> pairs);

struct MonotonicityCheck {
    double before;  ///< F(chi, omega)
    double after;   ///< F of the reduced states
};

MonotonicityCheck monotonicity_check(const DensityMatrix& chi,
                                     const DensityMatrix& omega,
                                     std::span<const std::size_t> dims,
                                     std::span<const std::size_t> keep);

}  // namespace clonebound
