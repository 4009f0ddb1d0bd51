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

// Dense complex linear algebra used by every other module. All objects in
// this library are small (dimension <= 64) and dense, so storage is a plain
// row-major Eigen matrix.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace clonebound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance on ||A - A^dagger||_F accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-9;
/// Eigenvalues in [-kPsdTol, 0) are round-off and get clamped to zero.
inline constexpr double kPsdTol = 1e-10;

/// Eigenvalues sorted descending; eigenvectors stored as orthonormal columns.
struct HermitianEig {
    RealVector values;
    ComplexMatrix vectors;
};

/// ||A - A^dagger||_F / max(1, ||A||_F). Throws NonSquare.
double hermiticity_residual(const ComplexMatrix& a);

HermitianEig eig_hermitian(const ComplexMatrix& a);

/// Principal square root of a PSD matrix. Throws NotPSD if an eigenvalue is
/// below -kPsdTol.
ComplexMatrix sqrt_psd(const ComplexMatrix& a);

/// X with A = X X^dagger, one column sqrt(lambda_i) v_i per eigenvalue above
/// dim * eps * lambda_max. Throws NotPSD if an eigenvalue is below -kPsdTol.
ComplexMatrix psd_factor(const ComplexMatrix& a);

/// Tr|sqrt(A) sqrt(B)| = sum of roots of the eigenvalues of sqrt(A) B sqrt(A),
/// evaluated as the singular values of X^dagger Y for the factors of A and B.
/// Both arguments must be PSD of equal dimension.
double sqrt_product_trace_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: out(i*rB + k, j*cB + l) = A(i,j) * B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// a (x) a (x) ... (x) a, `power` factors; power 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, int power);

/// Traces out every subsystem not listed in `keep`. Subsystem indices are
/// zero-based; `keep` may be given in any order, the result keeps the
/// original subsystem order. An empty `keep` yields the 1x1 scalar trace.
ComplexMatrix partial_trace(const ComplexMatrix& a,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

ComplexMatrix partial_trace(const ComplexMatrix& a,
                            std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep);

/// exp(iH) for Hermitian H, computed from its eigendecomposition.
ComplexMatrix expi_hermitian(const ComplexMatrix& h);

/// ||U^dagger U - I||_F.
double unitarity_residual(const ComplexMatrix& u);

}  // namespace clonebound
