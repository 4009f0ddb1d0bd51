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

#include "clonebound/random.hpp"

#include <cmath>

namespace clonebound {

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex diag = r(i, i);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(i) *= diag / mag;
        }
    }
    return q;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

ComplexVector random_state_vector(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_ginibre(dim, 1, rng);
    ComplexVector v = g.col(0);
    return v / v.norm();
}

DensityMatrix random_pure_state(std::size_t dim, Rng& rng) {
    return DensityMatrix::pure(random_state_vector(dim, rng));
}

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
    if (rank == 0 || rank > dim) {
        rank = dim;
    }
    const ComplexMatrix g = random_ginibre(dim, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::validate(0.5 * (rho + rho.adjoint()));
}

ComplexMatrix random_effect(std::size_t dim, Rng& rng) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const HermitianEig eig = eig_hermitian(h);
    const double op_norm = std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix e = 0.5 * (ComplexMatrix::Identity(n, n) + h / op_norm);
    return 0.5 * (e + e.adjoint());
}

}  // namespace clonebound
