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

// Closed-form upper limits on the global fidelity of state-dependent N -> L
// cloning of mixed states, and the nonlinear program they relax.
//
// Notation used throughout:
//   Delta_N, Delta_M, Delta_L   angles between the N-, M- and L-fold tensor
//                               powers of two input states (M = L - N);
//   alpha                       arccos sqrt(F(rho_j^N, rho_k^N) F(Ups_j, Ups_k)),
//                               the angle the cloner input pair can reach;
//   delta_j                     angle between the clone of rho_j and rho_j^L.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "clonebound/fidelity.hpp"
#include "clonebound/states.hpp"

namespace clonebound {

/// Restricted: F(rho_j^M, rho_k^M) < F(Ups_j, Ups_k) - 1e-12, a nontrivial
/// bound exists. Saturated: the ancilla can already hold perfect clones and
/// the pair contributes its trivial maximum.
enum class Regime { Restricted, Saturated };

std::string_view regime_name(Regime regime);

inline constexpr double kRegimeTol = 1e-12;

Regime classify_regime(double fidelity_extra, double ancilla_fidelity);

struct PairwiseAngles {
    std::size_t j = 0;
    std::size_t k = 0;
    double fidelity_n = 1.0;  ///< F(rho_j^N, rho_k^N)
    double fidelity_m = 1.0;  ///< F(rho_j^M, rho_k^M)
    double fidelity_l = 1.0;  ///< F(rho_j^L, rho_k^L)
    double ancilla_fidelity = 1.0;
    Angle delta_n;
    Angle delta_m;
    Angle delta_l;
    Angle alpha;
    Regime regime = Regime::Saturated;

    /// Right-hand side of delta_j + delta_k >= Delta_L - alpha; 0 when Saturated.
    double constraint() const;
};

/// Angles for every pair j < k, in lexicographic order. Tensor-power
/// fidelities use multiplicativity, F(a^n, b^n) = F(a, b)^n.
std::vector<PairwiseAngles> pairwise_angles(const CloningProblem& problem);

struct PairTerm {
    std::size_t j = 0;
    std::size_t k = 0;
    double weight = 0.0;       ///< p_j + p_k
    double conditional = 1.0;  ///< two-state limit with renormalized priors, in [1/2, 1]
    double contribution = 0.0; ///< weight * conditional / (n - 1)
    Regime regime = Regime::Saturated;
};

struct BoundReport {
    double bound = 1.0;
    std::vector<PairTerm> terms;
    std::vector<PairwiseAngles> angles;
};

/// Two-state limit 1/2 {1 + [1 - 4 p q sin^2 a]^{1/2}}.
double two_state_limit(double p, double q, double a);

/// Pairwise regrouped limit for any n >= 2; n = 2 reduces to theorem1_bound.
BoundReport pairwise_bound(const CloningProblem& problem);

/// Two-state limit; throws ArityError unless n = 2.
BoundReport theorem1_bound(const CloningProblem& problem);

/// Multi-state limit; throws ArityError unless n > 2. With ancilla
/// information each pair uses alpha in place of Delta_N when Restricted and
/// contributes p_j + p_k (before the 1/(n-1) normalization) when Saturated.
BoundReport theorem2_bound(const CloningProblem& problem);

/// 1/2 + 1/(n(n-1)) sum_{j<k} cos(Delta_L - alpha), cos taken as 1 for
/// Saturated pairs. Throws RangeError unless all priors equal 1/n (1e-12).
double equal_priors_bound(const CloningProblem& problem);

/// L -> infinity form 1/2 {1 + [1 - 4 p1 p2 F(rho_1^N, rho_2^N) F(Ups_1, Ups_2)]^{1/2}}.
/// Throws ArityError unless n = 2 and DegenerateStates if F(rho_1, rho_2) = 1.
double asymptotic_bound(const CloningProblem& problem);

struct LemmaResult {
    double fmax = 1.0;
    double x = 0.0;
    double y = 0.0;
};

/// Maximum of p cos^2 x + q cos^2 y over 0 <= x, y <= pi/2, x + y >= a, and
/// a maximizer on the segment x + y = a. Throws RangeError on invalid input.
LemmaResult lemma_fmax(double p, double q, double a);

/// sin(2x - a) cos a - (q - p) sin a cos(2x - a): zero at the stationary
/// point of p cos^2 x + q cos^2 (a - x) (the tangent condition, cleared of
/// denominators so it stays finite at a = pi/2).
double lemma_stationarity_residual(double p, double q, double a, double x);

struct RefinedOptions {
    std::size_t starts = 32;
    std::uint64_t seed = 0x5eedULL;
    /// Grid step (radians) for the n <= 3 exhaustive pass; never below 1e-4.
    double grid_step = 2e-3;
};

struct RefinedResult {
    double bound = 1.0;
    std::vector<double> deltas;
};

/// Maximizes sum_j p_j cos^2 delta_j over 0 <= delta_j <= pi/2 subject to
/// delta_j + delta_k >= Delta_L - alpha for every Restricted pair.
RefinedResult refined_bound(const CloningProblem& problem, const RefinedOptions& options = {});

struct PairResidual {
    std::size_t j = 0;
    std::size_t k = 0;
    double residual = 0.0;  ///< delta_j + delta_k - (Delta_L - alpha)
};

std::vector<PairResidual> tightness_gap(const CloningProblem& problem, const RefinedResult& refined);
std::vector<PairResidual> tightness_gap(const CloningProblem& problem, const RefinedOptions& options = {});

}  // namespace clonebound
