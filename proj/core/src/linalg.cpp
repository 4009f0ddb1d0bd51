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

#include "clonebound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "clonebound/errors.hpp"

namespace clonebound {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
        throw Error(ErrorKind::NonSquare, os.str());
    }
}

}  // namespace

double hermiticity_residual(const ComplexMatrix& a) {
    require_square(a, "hermiticity_residual");
    const ComplexMatrix diff = a - a.adjoint();
    return diff.norm() / std::max(1.0, a.norm());
}

HermitianEig eig_hermitian(const ComplexMatrix& a) {
    const double residual = hermiticity_residual(a);
    if (residual > kHermitianTol) {
        std::ostringstream os;
        os << "eig_hermitian: relative ||A - A^dagger||_F = " << residual << " exceeds " << kHermitianTol;
        throw Error(ErrorKind::NotHermitian, os.str());
    }
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NotHermitian, "eig_hermitian: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    const Eigen::Index n = sym.rows();
    HermitianEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = solver.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& a) {
    const HermitianEig eig = eig_hermitian(a);
    const Eigen::Index n = eig.values.size();
    RealVector roots(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = eig.values(i);
        if (lambda < -kPsdTol) {
            std::ostringstream os;
            os << "sqrt_psd: eigenvalue " << lambda << " below " << -kPsdTol;
            throw Error(ErrorKind::NotPSD, os.str());
        }
        roots(i) = std::sqrt(std::max(lambda, 0.0));
    }
    ComplexMatrix out = eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

ComplexMatrix psd_factor(const ComplexMatrix& a) {
    const HermitianEig eig = eig_hermitian(a);
    const Eigen::Index n = eig.values.size();
    if (n > 0 && eig.values(n - 1) < -kPsdTol) {
        std::ostringstream os;
        os << "psd_factor: eigenvalue " << eig.values(n - 1) << " below " << -kPsdTol;
        throw Error(ErrorKind::NotPSD, os.str());
    }
    const double cutoff =
        static_cast<double>(n) * std::numeric_limits<double>::epsilon() * std::max(eig.values(0), 0.0);
    Eigen::Index rank = 0;
    while (rank < n && eig.values(rank) > cutoff) {
        ++rank;
    }
    ComplexMatrix out = eig.vectors.leftCols(rank);
    for (Eigen::Index i = 0; i < rank; ++i) {
        out.col(i) *= std::sqrt(eig.values(i));
    }
    return out;
}

double sqrt_product_trace_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "sqrt_product_trace_norm");
    require_square(b, "sqrt_product_trace_norm");
    if (a.rows() != b.rows()) {
        std::ostringstream os;
        os << "sqrt_product_trace_norm: dimensions " << a.rows() << " and " << b.rows() << " differ";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    // With A = X X^dagger and B = Y Y^dagger, the eigenvalues of sqrt(A) B
    // sqrt(A) are the squared singular values of X^dagger Y. Taking singular
    // values directly avoids square roots of round-off on rank-deficient input.
    const ComplexMatrix x = psd_factor(a);
    const ComplexMatrix y = psd_factor(b);
    if (x.cols() == 0 || y.cols() == 0) {
        return 0.0;
    }
    const ComplexMatrix cross = x.adjoint() * y;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cross);
    return svd.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const Eigen::Index rb = b.rows();
    const Eigen::Index cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int power) {
    if (power < 0) {
        throw Error(ErrorKind::RangeError, "kron_power: negative power");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < power; ++i) {
        out = kron(out, a);
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    require_square(a, "partial_trace");
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (dims.empty() || total != static_cast<std::size_t>(a.rows())) {
        std::ostringstream os;
        os << "partial_trace: product of subsystem dimensions " << total << " != matrix dimension "
           << a.rows();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const std::size_t parties = dims.size();
    std::vector<bool> kept(parties, false);
    for (std::size_t k : keep) {
        if (k >= parties || kept[k]) {
            throw Error(ErrorKind::DimensionMismatch,
                        "partial_trace: keep index out of range or repeated");
        }
        kept[k] = true;
    }

    // Row-major strides of the full index and of the kept-only index.
    std::vector<std::size_t> stride(parties, 1);
    for (std::size_t s = parties - 1; s > 0; --s) {
        stride[s - 1] = stride[s] * dims[s];
    }
    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    std::vector<std::size_t> kept_parties;
    std::vector<std::size_t> traced_parties;
    for (std::size_t s = 0; s < parties; ++s) {
        if (kept[s]) {
            kept_dim *= dims[s];
            kept_parties.push_back(s);
        } else {
            traced_dim *= dims[s];
            traced_parties.push_back(s);
        }
    }

    // Offset into the full index contributed by a kept (resp. traced) multi-index.
    auto offsets = [&](const std::vector<std::size_t>& group, std::size_t count) {
        std::vector<std::size_t> out(count, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::size_t rem = flat;
            std::size_t off = 0;
            for (std::size_t g = group.size(); g > 0; --g) {
                const std::size_t s = group[g - 1];
                off += (rem % dims[s]) * stride[s];
                rem /= dims[s];
            }
            out[flat] = off;
        }
        return out;
    };
    const std::vector<std::size_t> kept_off = offsets(kept_parties, kept_dim);
    const std::vector<std::size_t> traced_off = offsets(traced_parties, traced_dim);

    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                            static_cast<Eigen::Index>(kept_dim));
    for (std::size_t r = 0; r < kept_dim; ++r) {
        for (std::size_t c = 0; c < kept_dim; ++c) {
            Complex sum = 0.0;
            for (std::size_t t : traced_off) {
                sum += a(static_cast<Eigen::Index>(kept_off[r] + t),
                         static_cast<Eigen::Index>(kept_off[c] + t));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a,
                            std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep) {
    return partial_trace(a, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h) {
    const HermitianEig eig = eig_hermitian(h);
    const Eigen::Index n = eig.values.size();
    ComplexVector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        phases(i) = std::polar(1.0, eig.values(i));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double unitarity_residual(const ComplexMatrix& u) {
    require_square(u, "unitarity_residual");
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

}  // namespace clonebound
