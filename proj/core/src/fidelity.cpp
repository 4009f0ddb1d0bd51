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

#include "clonebound/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "clonebound/errors.hpp"

namespace clonebound {

Angle Angle::from_fidelity(double f) {
    return Angle(std::acos(std::sqrt(std::clamp(f, 0.0, 1.0))));
}

Angle Angle::from_radians(double radians) {
    if (!(radians >= 0.0 && radians <= std::numbers::pi / 2)) {
        std::ostringstream os;
        os << "angle " << radians << " outside [0, pi/2]";
        throw Error(ErrorKind::RangeError, os.str());
    }
    return Angle(radians);
}

double fidelity(const DensityMatrix& chi, const DensityMatrix& omega) {
    if (chi.dim() != omega.dim()) {
        std::ostringstream os;
        os << "fidelity: dimensions " << chi.dim() << " and " << omega.dim() << " differ";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const double root = sqrt_product_trace_norm(chi.matrix(), omega.matrix());
    return std::clamp(root * root, 0.0, 1.0);
}

Angle angle(const DensityMatrix& chi, const DensityMatrix& omega) {
    return Angle::from_fidelity(fidelity(chi, omega));
}

double check_triangle(const DensityMatrix& chi, const DensityMatrix& omega, const DensityMatrix& rho) {
    return angle(chi, rho).radians() + angle(omega, rho).radians() - angle(chi, omega).radians();
}

DeviationBound measurement_deviation_bound(const DensityMatrix& chi,
                                           const DensityMatrix& omega,
                                           const ComplexMatrix& effect) {
    if (effect.rows() != effect.cols() || static_cast<std::size_t>(effect.rows()) != chi.dim() ||
        chi.dim() != omega.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "measurement_deviation_bound: dimensions differ");
    }
    if (hermiticity_residual(effect) > kHermitianTol) {
        throw Error(ErrorKind::InvalidEffect, "effect is not Hermitian");
    }
    const HermitianEig eig = eig_hermitian(effect);
    const double top = eig.values(0);
    const double bottom = eig.values(eig.values.size() - 1);
    if (bottom < -kPsdTol || top > 1.0 + kPsdTol) {
        std::ostringstream os;
        os << "effect spectrum [" << bottom << ", " << top << "] not inside [0, 1]";
        throw Error(ErrorKind::InvalidEffect, os.str());
    }
    const double p_chi = (effect * chi.matrix()).trace().real();
    const double p_omega = (effect * omega.matrix()).trace().real();
    return DeviationBound{std::abs(p_chi - p_omega), std::sin(angle(chi, omega).radians())};
}

double fidelity_product(std::span<const StatePair> pairs) {
    double product = 1.0;
    for (const auto& [chi, omega] : pairs) {
        product *= fidelity(chi, omega);
    }
    return product;
}

MonotonicityCheck monotonicity_check(const DensityMatrix& chi,
                                     const DensityMatrix& omega,
                                     std::span<const std::size_t> dims,
                                     std::span<const std::size_t> keep) {
    const double before = fidelity(chi, omega);
    const DensityMatrix chi_r = DensityMatrix::validate(partial_trace(chi.matrix(), dims, keep));
    const DensityMatrix omega_r = DensityMatrix::validate(partial_trace(omega.matrix(), dims, keep));
    return MonotonicityCheck{before, fidelity(chi_r, omega_r)};
}

}  // namespace clonebound
