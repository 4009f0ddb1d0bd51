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

// Explicit cloning machines: a unitary on register A (N systems), extra
// register B (M systems) and environment E. The clone of rho_j is
//     Tr_E[ U (rho_j^N (x) Ups_j) U^dagger ]
// and the machine is scored by the prior-weighted fidelity of the clones
// with rho_j^L.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clonebound/random.hpp"
#include "clonebound/states.hpp"

namespace clonebound {

class CloneMachine {
  public:
    /// Throws NonUnitary if ||U^dagger U - I||_F > 1e-8 and DimensionMismatch
    /// when the unitary or ancilla dimensions disagree with the layout.
    CloneMachine(std::size_t register_dim,
                 std::size_t extra_dim,
                 std::size_t env_dim,
                 ComplexMatrix unitary,
                 std::vector<DensityMatrix> ancilla_inputs);

    std::size_t register_dim() const noexcept {
        return register_dim_;
    }
    std::size_t extra_dim() const noexcept {
        return extra_dim_;
    }
    std::size_t env_dim() const noexcept {
        return env_dim_;
    }
    std::size_t total_dim() const noexcept {
        return register_dim_ * extra_dim_ * env_dim_;
    }
    const ComplexMatrix& unitary() const noexcept {
        return unitary_;
    }
    const std::vector<DensityMatrix>& ancilla_inputs() const noexcept {
        return ancilla_inputs_;
    }

    CloneMachine with_unitary(ComplexMatrix unitary) const;

  private:
    std::size_t register_dim_;
    std::size_t extra_dim_;
    std::size_t env_dim_;
    ComplexMatrix unitary_;
    std::vector<DensityMatrix> ancilla_inputs_;
};

inline constexpr double kUnitaryTol = 1e-8;

/// Environment dimension implied by the problem's ancilla states (their
/// dimension divided by d^M); nullopt without ancilla information. Throws
/// DimensionMismatch when the division is not exact.
std::optional<std::size_t> ancilla_env_dim(const CloningProblem& problem);

/// The problem's ancilla states when present (env_dim must match), else
/// |0><0| on B (x) E for every label.
std::vector<DensityMatrix> default_ancilla_inputs(const CloningProblem& problem, std::size_t env_dim);

/// Machine with U = I for the problem's layout.
CloneMachine identity_machine(const CloningProblem& problem, std::size_t env_dim);
CloneMachine identity_machine(const CloningProblem& problem,
                              std::size_t env_dim,
                              std::vector<DensityMatrix> ancilla_inputs);

/// The clone of input label j.
DensityMatrix apply(const CloneMachine& machine, const CloningProblem& problem, std::size_t j);

/// sum_j p_j F(clone_j, rho_j^L).
double global_fidelity(const CloneMachine& machine, const CloningProblem& problem);

/// Global-fidelity limit matching the problem arity (two-state form for n = 2,
/// multi-state form otherwise).
double reference_bound(const CloningProblem& problem);

/// Hermitian generator packing: dim diagonal entries, then real and
/// imaginary parts of the strict upper triangle, dim^2 reals in total.
std::size_t generator_param_count(std::size_t dim);
ComplexMatrix hermitian_generator(std::span<const double> params, std::size_t dim);
/// exp(iH) for the packed generator.
ComplexMatrix unitary_from_params(std::span<const double> params, std::size_t dim);

enum class Ansatz {
    Full,    ///< unitary on A (x) B (x) E
    AbPure,  ///< unitary on A (x) B only, B starts in |0...0>, no environment
};

std::string_view ansatz_name(Ansatz ansatz);
std::optional<Ansatz> parse_ansatz(std::string_view name);

enum class SearchStatus { Converged, BudgetExhausted };

struct OptimizeOptions {
    /// Defaults to the ancilla's environment, else d^N. Ignored by AbPure.
    std::optional<std::size_t> env_dim;
    std::size_t budget = 20000;
    std::uint64_t seed = 1;
    Ansatz ansatz = Ansatz::Full;
    std::size_t restarts = 16;
};

struct OptimizeResult {
    CloneMachine machine;
    double fidelity = 0.0;
    double bound = 1.0;
    double gap = 0.0;  ///< bound - fidelity
    std::size_t evaluations = 0;
    SearchStatus status = SearchStatus::BudgetExhausted;
};

/// Derivative-free multistart simplex ascent of the global fidelity over
/// unitaries. Deterministic for fixed (problem, options).
OptimizeResult optimize(const CloningProblem& problem, const OptimizeOptions& options);

enum class MachineSource { Haar, Identity, Mixed };

struct SweepOptions {
    std::size_t trials = 500;
    std::uint64_t seed = 7;
    MachineSource machines = MachineSource::Mixed;
    std::vector<std::size_t> env_dims{1, 2, 4};
};

/// Produces a problem whose ancilla states (if any) live on d^M * env_dim.
using ProblemGenerator = std::function<CloningProblem(Rng&, std::size_t env_dim)>;

/// Two-state N = 1, L = 2 problems on C^dim: random ranks, random priors,
/// ancilla information on every other draw.
ProblemGenerator random_two_state_problems(std::size_t dim = 2);

struct SweepCounterexample {
    std::size_t trial = 0;
    std::string check;
    double value = 0.0;  ///< the quantity that should be >= 0 (slack)
    CloningProblem problem;
    CloneMachine machine;
};

struct SweepReport {
    std::size_t trials = 0;
    double min_bound_slack = 0.0;  ///< min of bound - F_G
    double max_bound_slack = 0.0;
    double min_chain_slack = 0.0;  ///< min of delta_1 + delta_2 - (Delta_L - alpha)
    double min_alpha_slack = 0.0;  ///< min of F(clone_1, clone_2) - F(rho_1^N, rho_2^N) F(Ups_1, Ups_2)
    std::vector<SweepCounterexample> counterexamples;
};

inline constexpr double kSweepBoundTol = 1e-6;
inline constexpr double kSweepChainTol = 1e-6;
inline constexpr double kSweepAlphaTol = 1e-8;

/// For each trial draws a problem and a machine and checks F_G <= bound +
/// kSweepBoundTol, delta_1 + delta_2 >= Delta_L - alpha - kSweepChainTol and
/// F(clone_1, clone_2) >= F(rho_1^N, rho_2^N) F(Ups_1, Ups_2) - kSweepAlphaTol.
SweepReport verify_bound_sweep(const ProblemGenerator& generator, const SweepOptions& options);

}  // namespace clonebound
