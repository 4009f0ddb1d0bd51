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

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "clonebound/linalg.hpp"

namespace clonebound {

inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPriorSumTol = 1e-12;

/// Hermitian, positive-semidefinite, unit-trace operator. Instances only come
/// out of `validate` (or constructions that preserve its invariants), so
/// holders never need to re-check.
class DensityMatrix {
  public:
    /// Throws NonSquare, NotHermitian, NotPSD or TraceNotOne.
    static DensityMatrix validate(const ComplexMatrix& m);

    static DensityMatrix pure(const ComplexVector& amplitudes);
    static DensityMatrix basis(std::size_t dim, std::size_t index);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const ComplexMatrix& matrix() const noexcept {
        return matrix_;
    }

    DensityMatrix tensor(const DensityMatrix& other) const;
    DensityMatrix tensor_power(int copies) const;

  private:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    }
    ComplexMatrix matrix_;
};

/// States with prior probabilities; all states share one dimension.
class Ensemble {
  public:
    /// Throws DimensionMismatch on empty/mismatched lists and InvalidPriors
    /// when priors are negative or do not sum to one within 1e-12.
    Ensemble(std::vector<DensityMatrix> states, std::vector<double> priors);

    /// Equal priors 1/n.
    static Ensemble uniform(std::vector<DensityMatrix> states);

    std::size_t size() const noexcept {
        return states_.size();
    }
    std::size_t dim() const noexcept {
        return states_.front().dim();
    }
    const std::vector<DensityMatrix>& states() const noexcept {
        return states_;
    }
    const std::vector<double>& priors() const noexcept {
        return priors_;
    }
    const DensityMatrix& state(std::size_t j) const {
        return states_.at(j);
    }
    double prior(std::size_t j) const {
        return priors_.at(j);
    }

  private:
    std::vector<DensityMatrix> states_;
    std::vector<double> priors_;
};

/// N -> L cloning of an input ensemble, optionally assisted by label-dependent
/// ancilla states. Without ancilla states the ancilla carries no information
/// about the label (all ancilla states equal).
class CloningProblem {
  public:
    /// Throws RangeError unless 1 <= copies_in < copies_out, and
    /// DimensionMismatch if the ancilla ensemble has a different size.
    CloningProblem(Ensemble input, std::optional<Ensemble> ancilla, int copies_in, int copies_out);

    const Ensemble& input() const noexcept {
        return input_;
    }
    const std::optional<Ensemble>& ancilla() const noexcept {
        return ancilla_;
    }
    bool has_ancilla_information() const noexcept {
        return ancilla_.has_value();
    }
    std::size_t size() const noexcept {
        return input_.size();
    }
    std::size_t dim() const noexcept {
        return input_.dim();
    }
    int copies_in() const noexcept {
        return copies_in_;
    }
    int copies_out() const noexcept {
        return copies_out_;
    }
    /// M = L - N, the number of systems in the extra register.
    int copies_extra() const noexcept {
        return copies_out_ - copies_in_;
    }

    /// F(Upsilon_j, Upsilon_k); 1 when no ancilla information is present.
    double ancilla_fidelity(std::size_t j, std::size_t k) const;

    /// Returns a copy with different copy counts (same ensembles).
    CloningProblem with_copies(int copies_in, int copies_out) const;
    /// Returns a copy with different input priors.
    CloningProblem with_priors(std::vector<double> priors) const;
    /// Returns a copy with the given ancilla ensemble (or none).
    CloningProblem with_ancilla(std::optional<Ensemble> ancilla) const;

  private:
    Ensemble input_;
    std::optional<Ensemble> ancilla_;
    int copies_in_;
    int copies_out_;
};

/// Pure state on base (x) environment whose reduction to the base is the
/// purified state. Vector index = base_index * env_dim + env_index.
struct Purification {
    std::size_t base_dim = 0;
    std::size_t env_dim = 0;
    ComplexVector vector;

    /// Tr_env |P><P|.
    ComplexMatrix reduced() const;
    ComplexMatrix projector() const;
};

/// sum_k sqrt(lambda_k) |v_k> (x) |k>, eigenpairs in descending order;
/// env_dim equals the state dimension.
Purification purify(const DensityMatrix& rho);

/// Purifications |X>, |Y> of chi and omega with |<X|Y>|^2 = F(chi, omega).
/// |X> is canonical; |Y> is aligned through the polar decomposition of the
/// cross matrix. Throws DimensionMismatch.
std::pair<Purification, Purification> optimal_purification_pair(const DensityMatrix& chi,
                                                                 const DensityMatrix& omega);

/// Pure states Lambda and Upsilon on H1 (x) H2 (x) H3 (dims d, d, 2) that
/// reduce to chi and omega on H1 and have F(Lambda, Upsilon) = r.
struct SufficientAncilla {
    DensityMatrix lambda;
    DensityMatrix upsilon;
    std::array<std::size_t, 3> layout;
    double theta;
};

/// Requires 0 <= r <= F(chi, omega). Throws RangeError when r exceeds the
/// fidelity (by more than 1e-9) or is negative, and DegenerateFidelity when
/// F(chi, omega) = 0 but r > 0.
SufficientAncilla sufficient_ancilla(const DensityMatrix& chi, const DensityMatrix& omega, double r);

}  // namespace clonebound
