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

#include "clonebound/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "clonebound/errors.hpp"
#include "clonebound/fidelity.hpp"

namespace clonebound {

DensityMatrix DensityMatrix::validate(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream os;
        os << "density matrix must be non-empty and square, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::NonSquare, os.str());
    }
    const double herm = hermiticity_residual(m);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "Hermiticity violated: relative ||A - A^dagger||_F = " << herm;
        throw Error(ErrorKind::NotHermitian, os.str());
    }
    const HermitianEig eig = eig_hermitian(m);
    const double smallest = eig.values(eig.values.size() - 1);
    if (smallest < -kPsdTol) {
        std::ostringstream os;
        os << "positivity violated: smallest eigenvalue " << smallest;
        throw Error(ErrorKind::NotPSD, os.str());
    }
    const double trace = m.trace().real();
    if (std::abs(trace - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "unit trace violated: |Tr - 1| = " << std::abs(trace - 1.0);
        throw Error(ErrorKind::TraceNotOne, os.str());
    }
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& amplitudes) {
    const double norm = amplitudes.norm();
    if (amplitudes.size() < 1 || norm == 0.0) {
        throw Error(ErrorKind::RangeError, "pure state needs a non-zero amplitude vector");
    }
    const ComplexVector unit = amplitudes / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorKind::RangeError, "basis index out of range");
    }
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    if (dim < 1) {
        throw Error(ErrorKind::RangeError, "dimension must be positive");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
    return DensityMatrix(kron(matrix_, other.matrix_));
}

DensityMatrix DensityMatrix::tensor_power(int copies) const {
    return DensityMatrix(kron_power(matrix_, copies));
}

Ensemble::Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.empty() || states_.size() != priors_.size()) {
        std::ostringstream os;
        os << "ensemble needs n >= 1 states and as many priors, got " << states_.size() << " states and "
           << priors_.size() << " priors";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    for (const auto& s : states_) {
        if (s.dim() != states_.front().dim()) {
            throw Error(ErrorKind::DimensionMismatch, "ensemble states differ in dimension");
        }
    }
    double sum = 0.0;
    for (double p : priors_) {
        if (!(p >= 0.0)) {
            std::ostringstream os;
            os << "prior " << p << " is negative";
            throw Error(ErrorKind::InvalidPriors, os.str());
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPriorSumTol) {
        std::ostringstream os;
        os << "priors sum to " << sum << ", |sum - 1| = " << std::abs(sum - 1.0);
        throw Error(ErrorKind::InvalidPriors, os.str());
    }
}

Ensemble Ensemble::uniform(std::vector<DensityMatrix> states) {
    const std::size_t n = states.size();
    std::vector<double> priors(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
    return Ensemble(std::move(states), std::move(priors));
}

CloningProblem::CloningProblem(Ensemble input, std::optional<Ensemble> ancilla, int copies_in,
                               int copies_out)
    : input_(std::move(input)), ancilla_(std::move(ancilla)), copies_in_(copies_in), copies_out_(copies_out) {
    if (copies_in_ < 1 || copies_out_ <= copies_in_) {
        std::ostringstream os;
        os << "copy counts must satisfy 1 <= N < L, got N = " << copies_in_ << ", L = " << copies_out_;
        throw Error(ErrorKind::RangeError, os.str());
    }
    if (ancilla_ && ancilla_->size() != input_.size()) {
        std::ostringstream os;
        os << "ancilla ensemble has " << ancilla_->size() << " states, input has " << input_.size();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

double CloningProblem::ancilla_fidelity(std::size_t j, std::size_t k) const {
    if (!ancilla_) {
        return 1.0;
    }
    return fidelity(ancilla_->state(j), ancilla_->state(k));
}

CloningProblem CloningProblem::with_copies(int copies_in, int copies_out) const {
    return CloningProblem(input_, ancilla_, copies_in, copies_out);
}

CloningProblem CloningProblem::with_priors(std::vector<double> priors) const {
    return CloningProblem(Ensemble(input_.states(), std::move(priors)), ancilla_, copies_in_, copies_out_);
}

CloningProblem CloningProblem::with_ancilla(std::optional<Ensemble> ancilla) const {
    return CloningProblem(input_, std::move(ancilla), copies_in_, copies_out_);
}

ComplexMatrix Purification::projector() const {
    return vector * vector.adjoint();
}

ComplexMatrix Purification::reduced() const {
    const std::array<std::size_t, 2> dims{base_dim, env_dim};
    const std::array<std::size_t, 1> keep{0};
    return partial_trace(projector(), dims, keep);
}

namespace {

ComplexVector flatten(const ComplexMatrix& m) {
    ComplexVector v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            v(i * m.cols() + k) = m(i, k);
        }
    }
    return v;
}

// Amplitude matrix of the canonical purification: X(i, k) = sqrt(lambda_k) v_k(i).
ComplexMatrix canonical_amplitudes(const DensityMatrix& rho) {
    const HermitianEig eig = eig_hermitian(rho.matrix());
    RealVector roots(eig.values.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        roots(k) = std::sqrt(std::max(eig.values(k), 0.0));
    }
    return eig.vectors * roots.asDiagonal();
}

// Unitary U maximizing Re Tr(A U), i.e. U = R L^dagger for A = L S R^dagger.
// The singular vectors come from the eigendecomposition of A^dagger A.
ComplexMatrix polar_alignment(const ComplexMatrix& a) {
    const Eigen::Index d = a.rows();
    const HermitianEig gram = eig_hermitian(a.adjoint() * a);
    const double top = std::sqrt(std::max(gram.values(0), 0.0));
    ComplexMatrix left = ComplexMatrix::Zero(d, d);
    Eigen::Index filled = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double sigma = std::sqrt(std::max(gram.values(i), 0.0));
        if (sigma <= 1e-10 * std::max(1.0, top)) {
            break;
        }
        ComplexVector col = a * gram.vectors.col(i) / sigma;
        // Re-orthogonalize against earlier columns; small singular values lose accuracy.
        for (Eigen::Index j = 0; j < filled; ++j) {
            col -= left.col(j).dot(col) * left.col(j);
        }
        const double norm = col.norm();
        if (norm < 0.5) {
            break;
        }
        left.col(filled++) = col / norm;
    }
    // Complete the left singular basis for the null directions.
    for (Eigen::Index e = 0; e < d && filled < d; ++e) {
        ComplexVector col = ComplexVector::Unit(d, e);
        for (Eigen::Index j = 0; j < filled; ++j) {
            col -= left.col(j).dot(col) * left.col(j);
        }
        const double norm = col.norm();
        if (norm > 1e-6) {
            left.col(filled++) = col / norm;
        }
    }
    return gram.vectors * left.adjoint();
}

}  // namespace

Purification purify(const DensityMatrix& rho) {
    const ComplexMatrix amps = canonical_amplitudes(rho);
    return Purification{rho.dim(), rho.dim(), flatten(amps)};
}

std::pair<Purification, Purification> optimal_purification_pair(const DensityMatrix& chi,
                                                                 const DensityMatrix& omega) {
    if (chi.dim() != omega.dim()) {
        std::ostringstream os;
        os << "optimal_purification_pair: dimensions " << chi.dim() << " and " << omega.dim() << " differ";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const ComplexMatrix x = canonical_amplitudes(chi);
    const ComplexMatrix root_omega = sqrt_psd(omega.matrix());
    // <X|Y> = Tr(X^dagger sqrt(omega) U); maximized over the environment unitary U.
    const ComplexMatrix cross = x.adjoint() * root_omega;
    const ComplexMatrix y = root_omega * polar_alignment(cross);
    const std::size_t d = chi.dim();
    return {Purification{d, d, flatten(x)}, Purification{d, d, flatten(y)}};
}

SufficientAncilla sufficient_ancilla(const DensityMatrix& chi, const DensityMatrix& omega, double r) {
    if (chi.dim() != omega.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "sufficient_ancilla: state dimensions differ");
    }
    const double f = fidelity(chi, omega);
    if (r < 0.0 || !std::isfinite(r)) {
        std::ostringstream os;
        os << "target fidelity " << r << " must be non-negative";
        throw Error(ErrorKind::RangeError, os.str());
    }
    if (f <= 0.0 && r > 0.0) {
        std::ostringstream os;
        os << "F(chi, omega) = 0 admits only r = 0, got r = " << r;
        throw Error(ErrorKind::DegenerateFidelity, os.str());
    }
    if (r > f + 1e-9) {
        std::ostringstream os;
        os << "target fidelity " << r << " exceeds F(chi, omega) = " << f;
        throw Error(ErrorKind::RangeError, os.str());
    }
    const double theta = f > 0.0 ? std::acos(std::sqrt(std::clamp(r / f, 0.0, 1.0))) : std::numbers::pi / 2;

    const auto [x, y] = optimal_purification_pair(chi, omega);
    const Eigen::Index n = x.vector.size();
    ComplexVector x0 = ComplexVector::Zero(2 * n);
    ComplexVector ytheta = ComplexVector::Zero(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x0(2 * i) = x.vector(i);
        ytheta(2 * i) = y.vector(i) * std::cos(theta);
        ytheta(2 * i + 1) = y.vector(i) * std::sin(theta);
    }
    return SufficientAncilla{DensityMatrix::pure(x0), DensityMatrix::pure(ytheta), {chi.dim(), chi.dim(), 2},
                             theta};
}

}  // namespace clonebound
