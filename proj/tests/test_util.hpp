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

// Independent reference computations shared by the unit and acceptance tests.
// Nothing here calls into the library routines it is used to check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "clonebound/linalg.hpp"
#include "clonebound/states.hpp"

namespace clonebound::testing {

inline constexpr double kPi = std::numbers::pi;

/// Entrywise loop over all index tuples: keeps the subsystems in `keep`.
inline ComplexMatrix naive_partial_trace(const ComplexMatrix& a,
                                         const std::vector<std::size_t>& dims,
                                         const std::vector<std::size_t>& keep) {
    const std::size_t k = dims.size();
    std::vector<bool> kept(k, false);
    for (std::size_t s : keep) {
        kept[s] = true;
    }
    std::size_t total = 1;
    std::size_t out_dim = 1;
    for (std::size_t s = 0; s < k; ++s) {
        total *= dims[s];
        if (kept[s]) {
            out_dim *= dims[s];
        }
    }
    auto digits = [&](std::size_t index) {
        std::vector<std::size_t> d(k);
        for (std::size_t s = k; s-- > 0;) {
            d[s] = index % dims[s];
            index /= dims[s];
        }
        return d;
    };
    auto kept_index = [&](const std::vector<std::size_t>& d) {
        std::size_t index = 0;
        for (std::size_t s = 0; s < k; ++s) {
            if (kept[s]) {
                index = index * dims[s] + d[s];
            }
        }
        return index;
    };
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
    for (std::size_t r = 0; r < total; ++r) {
        const auto dr = digits(r);
        for (std::size_t c = 0; c < total; ++c) {
            const auto dc = digits(c);
            bool traced_equal = true;
            for (std::size_t s = 0; s < k; ++s) {
                if (!kept[s] && dr[s] != dc[s]) {
                    traced_equal = false;
                    break;
                }
            }
            if (traced_equal) {
                out(static_cast<Eigen::Index>(kept_index(dr)), static_cast<Eigen::Index>(kept_index(dc))) +=
                    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return out;
}

/// cos(theta/2) |0> + e^{i phase} sin(theta/2) |1>.
inline ComplexVector qubit_vector(double theta, double phase = 0.0) {
    ComplexVector v(2);
    v(0) = std::cos(theta / 2);
    v(1) = std::polar(1.0, phase) * std::sin(theta / 2);
    return v;
}

/// (1 - eps) |s><s| + eps I/2 for the qubit at Bloch polar angle theta.
inline DensityMatrix depolarized_qubit(double theta, double eps, double phase = 0.0) {
    const ComplexVector v = qubit_vector(theta, phase);
    ComplexMatrix m = (1.0 - eps) * (v * v.adjoint()) + eps * 0.5 * ComplexMatrix::Identity(2, 2);
    return DensityMatrix::validate(m);
}

inline ComplexVector vector_kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline ComplexVector vector_power(const ComplexVector& a, int copies) {
    ComplexVector out = ComplexVector::Ones(1);
    for (int i = 0; i < copies; ++i) {
        out = vector_kron(out, a);
    }
    return out;
}

/// Optimal two-state 1 -> 2 global fidelity for equiprobable pure states
/// with overlap modulus c: (1 + c^3 + sqrt((1 - c^2)(1 - c^4))) / 2.
inline double pure_pair_clone_fidelity(double c) {
    return 0.5 * (1.0 + c * c * c + std::sqrt((1.0 - c * c) * (1.0 - c * c * c * c)));
}

/// Minimum-error discrimination success for two pure states.
inline double helstrom_success(double p1, double p2, double overlap_modulus) {
    return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * p1 * p2 * overlap_modulus * overlap_modulus));
}

/// Grid maximum of p cos^2 x + q cos^2 y over 0 <= x, y <= pi/2, x + y >= a.
/// x runs over the grid; y is the smallest feasible value max(0, a - x).
inline double lemma_grid_oracle(double p, double q, double a, double step) {
    const double half_pi = kPi / 2;
    double best = -1.0;
    for (std::size_t i = 0;; ++i) {
        const double xx = std::min(static_cast<double>(i) * step, half_pi);
        const double y = std::max(0.0, a - xx);
        if (y <= half_pi) {
            best = std::max(best, p * std::cos(xx) * std::cos(xx) + q * std::cos(y) * std::cos(y));
        }
        if (xx >= half_pi) {
            break;
        }
    }
    return best;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace clonebound::testing
