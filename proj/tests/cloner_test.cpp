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

#include "clonebound/cloner.hpp"

#include <array>

#include "gtest/gtest.h"

#include "clonebound/bounds.hpp"
#include "clonebound/errors.hpp"
#include "clonebound/fidelity.hpp"
#include "test_util.hpp"

using namespace clonebound;
using clonebound::testing::depolarized_qubit;
using clonebound::testing::kPi;
using clonebound::testing::max_abs_diff;
using clonebound::testing::qubit_vector;

namespace {

/// Permutation unitary sending basis state i to perm[i].
ComplexMatrix permutation(const std::vector<Eigen::Index>& perm) {
    const auto n = static_cast<Eigen::Index>(perm.size());
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        u(perm[static_cast<std::size_t>(i)], i) = 1.0;
    }
    return u;
}

CloningProblem basis_problem() {
    return CloningProblem(Ensemble::uniform({DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}), std::nullopt,
                          1, 2);
}

CloningProblem pure_pair(double theta) {
    return CloningProblem(Ensemble::uniform({DensityMatrix::pure(qubit_vector(theta / 2)),
                                             DensityMatrix::pure(qubit_vector(-theta / 2))}),
                          std::nullopt, 1, 2);
}

}  // namespace

TEST(cloner, machine_validation) {
    const CloningProblem p = basis_problem();
    const CloneMachine id = identity_machine(p, 2);
    ASSERT_EQ(id.total_dim(), 8u);
    ASSERT_EQ(id.ancilla_inputs().size(), 2u);
    ComplexMatrix bad = ComplexMatrix::Identity(8, 8);
    bad(0, 0) = 1.1;
    try {
        id.with_unitary(bad);
        FAIL();
    } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::NonUnitary);
    }
    ASSERT_THROW(id.with_unitary(ComplexMatrix::Identity(4, 4)), Error);
    ASSERT_THROW(CloneMachine(2, 2, 1, ComplexMatrix::Identity(4, 4), {DensityMatrix::basis(4, 0)}), Error);
    const CloneMachine wrong(4, 2, 1, ComplexMatrix::Identity(8, 8), {DensityMatrix::basis(2, 0)});
    ASSERT_THROW(apply(wrong, p, 0), Error);
}

TEST(cloner, apply_identity_keeps_the_ancilla) {
    const DensityMatrix rho = depolarized_qubit(0.7, 0.2);
    const DensityMatrix sigma_b = depolarized_qubit(2.0, 0.4);
    const DensityMatrix sigma_e = depolarized_qubit(1.0, 0.5, 0.3);
    const CloningProblem p(Ensemble::uniform({rho, DensityMatrix::basis(2, 1)}), std::nullopt, 1, 2);
    const DensityMatrix anc = sigma_b.tensor(sigma_e);
    const CloneMachine m = identity_machine(p, 2, {anc, anc});
    ASSERT_LT(max_abs_diff(apply(m, p, 0).matrix(), rho.tensor(sigma_b).matrix()), 1e-14);
}

TEST(cloner, basis_state_cloning) {
    const CloningProblem p = basis_problem();
    // SWAP of A and B with B in |0>: |0>|0> -> |00>.
    const CloneMachine swap = identity_machine(p, 1).with_unitary(permutation({0, 2, 1, 3}));
    ASSERT_LT(max_abs_diff(apply(swap, p, 0).matrix(), DensityMatrix::basis(4, 0).matrix()), 1e-15);
    // CNOT copies both basis states.
    const CloneMachine cnot = identity_machine(p, 1).with_unitary(permutation({0, 1, 3, 2}));
    ASSERT_LT(max_abs_diff(apply(cnot, p, 1).matrix(), DensityMatrix::basis(4, 3).matrix()), 1e-15);
    ASSERT_NEAR(global_fidelity(cnot, p), 1.0, 1e-14);
}

TEST(cloner, orthogonal_output_scores_zero) {
    // A, B, E qubits; B starts in |1>, E in |0>; U swaps A with E, so the
    // output on AB is |01> whatever the input.
    const CloningProblem p(Ensemble({DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)}, {0.3, 0.7}),
                           std::nullopt, 1, 2);
    const DensityMatrix anc = DensityMatrix::basis(4, 2);
    std::vector<Eigen::Index> perm(8);
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index b = 0; b < 2; ++b) {
            for (Eigen::Index e = 0; e < 2; ++e) {
                perm[static_cast<std::size_t>(a * 4 + b * 2 + e)] = e * 4 + b * 2 + a;
            }
        }
    }
    const CloneMachine m = identity_machine(p, 2, {anc, anc}).with_unitary(permutation(perm));
    ASSERT_LT(max_abs_diff(apply(m, p, 1).matrix(), DensityMatrix::basis(4, 1).matrix()), 1e-15);
    ASSERT_NEAR(global_fidelity(m, p), 0.0, 1e-15);
}

TEST(cloner, identity_machine_fidelity_factorizes) {
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix r0 = random_density_matrix(2, rng, 1 + t % 2);
        const DensityMatrix r1 = random_density_matrix(2, rng);
        const int n_in = 1 + t % 2;
        const int n_out = n_in + 1 + (t / 2) % 2;
        const CloningProblem p(Ensemble({r0, r1}, {0.25, 0.75}), std::nullopt, n_in, n_out);
        const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
        const DensityMatrix anc = mixed.tensor_power(n_out - n_in).tensor(DensityMatrix::basis(2, 0));
        const CloneMachine m = identity_machine(p, 2, {anc, anc});

        double expected = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
            const DensityMatrix& rho = p.input().state(j);
            std::vector<StatePair> pairs;
            for (int c = 0; c < n_in; ++c) {
                pairs.emplace_back(rho, rho);
            }
            for (int c = n_in; c < n_out; ++c) {
                pairs.emplace_back(mixed, rho);
            }
            expected += p.input().prior(j) * fidelity_product(pairs);
        }
        ASSERT_NEAR(global_fidelity(m, p), expected, 1e-9);
    }
}

TEST(cloner, random_machines_give_valid_clones) {
    Rng rng(42);
    const CloningProblem p(Ensemble::uniform({depolarized_qubit(0.2, 0.1), depolarized_qubit(1.4, 0.3)}),
                           std::nullopt, 1, 2);
    for (std::size_t env : {1, 2, 3}) {
        const CloneMachine base = identity_machine(p, env);
        const CloneMachine m = base.with_unitary(random_unitary(base.total_dim(), rng));
        for (std::size_t j = 0; j < 2; ++j) {
            const DensityMatrix c = apply(m, p, j);
            ASSERT_NEAR(c.matrix().trace().real(), 1.0, 1e-12);
        }
        const double fg = global_fidelity(m, p);
        ASSERT_GE(fg, 0.0);
        ASSERT_LE(fg, theorem1_bound(p).bound + 1e-6);
    }
}

TEST(cloner, environment_unitary_invariance) {
    Rng rng(43);
    const CloningProblem p(Ensemble({depolarized_qubit(0.3, 0.2), depolarized_qubit(1.2, 0.1)}, {0.4, 0.6}),
                           std::nullopt, 1, 2);
    for (std::size_t env : {2, 4}) {
        const CloneMachine base = identity_machine(p, env);
        const ComplexMatrix u = random_unitary(base.total_dim(), rng);
        const ComplexMatrix v = kron(ComplexMatrix::Identity(4, 4), random_unitary(env, rng));
        const double f = global_fidelity(base.with_unitary(u), p);
        ASSERT_NEAR(global_fidelity(base.with_unitary(v * u), p), f, 1e-8);
    }
}

TEST(cloner, generator_packing) {
    const std::size_t dim = 4;
    ASSERT_EQ(generator_param_count(dim), 16u);
    std::vector<double> params(16);
    for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] = 0.1 * static_cast<double>(i) - 0.7;
    }
    const ComplexMatrix h = hermitian_generator(params, dim);
    ASSERT_EQ(hermiticity_residual(h), 0.0);
    ASSERT_EQ(h(0, 0), Complex(params[0], 0));
    ASSERT_EQ(h(3, 3), Complex(params[3], 0));
    ASSERT_EQ(h(0, 1), Complex(params[4], params[5]));
    ASSERT_LT(unitarity_residual(unitary_from_params(params, dim)), 1e-12);
    ASSERT_LT(max_abs_diff(unitary_from_params(std::vector<double>(16, 0.0), dim), ComplexMatrix::Identity(4, 4)),
              1e-15);
    ASSERT_THROW(hermitian_generator(std::vector<double>(15, 0.0), dim), Error);
}

TEST(cloner, ansatz_names) {
    ASSERT_EQ(ansatz_name(Ansatz::Full), "full");
    ASSERT_EQ(ansatz_name(Ansatz::AbPure), "ab-pure");
    ASSERT_EQ(parse_ansatz("ab-pure"), Ansatz::AbPure);
    ASSERT_EQ(parse_ansatz("full"), Ansatz::Full);
    ASSERT_FALSE(parse_ansatz("other").has_value());
}

TEST(cloner, optimize_reaches_perfect_cloning_of_orthogonal_states) {
    OptimizeOptions options;
    options.budget = 20000;
    options.seed = 5;
    const OptimizeResult r = optimize(basis_problem(), options);
    ASSERT_GE(r.fidelity, 1.0 - 1e-3);
    ASSERT_GE(r.gap, -1e-6);
    ASSERT_LE(r.evaluations, options.budget);
}

TEST(cloner, optimize_is_deterministic) {
    OptimizeOptions options;
    options.budget = 3000;
    options.seed = 9;
    const CloningProblem p = pure_pair(kPi / 5);
    const OptimizeResult a = optimize(p, options);
    const OptimizeResult b = optimize(p, options);
    ASSERT_EQ(a.fidelity, b.fidelity);
    ASSERT_EQ(a.evaluations, b.evaluations);
    ASSERT_EQ(a.machine.unitary(), b.machine.unitary());
    ASSERT_GE(a.gap, -1e-6);
}

TEST(cloner, optimize_ab_pure_layout) {
    OptimizeOptions options;
    options.budget = 2000;
    options.ansatz = Ansatz::AbPure;
    const CloningProblem p = pure_pair(kPi / 5);
    const OptimizeResult r = optimize(p, options);
    ASSERT_EQ(r.machine.env_dim(), 1u);
    ASSERT_EQ(r.machine.total_dim(), 4u);
    ASSERT_GE(r.gap, -1e-6);
    const CloningProblem informed = p.with_ancilla(Ensemble::uniform({DensityMatrix::basis(2, 0),
                                                                      DensityMatrix::basis(2, 1)}));
    ASSERT_THROW(optimize(informed, options), Error);
}

TEST(cloner, sweep_edge_cases) {
    SweepOptions options;
    options.trials = 0;
    const SweepReport empty = verify_bound_sweep(random_two_state_problems(), options);
    ASSERT_EQ(empty.trials, 0u);
    ASSERT_TRUE(empty.counterexamples.empty());

    options.trials = 60;
    options.machines = MachineSource::Identity;
    const SweepReport ident = verify_bound_sweep(random_two_state_problems(), options);
    ASSERT_TRUE(ident.counterexamples.empty());
    ASSERT_GE(ident.min_chain_slack, -kSweepChainTol);

    options.machines = MachineSource::Mixed;
    options.seed = 3;
    const SweepReport mixed = verify_bound_sweep(random_two_state_problems(3), options);
    ASSERT_TRUE(mixed.counterexamples.empty());
    ASSERT_GE(mixed.min_bound_slack, -kSweepBoundTol);
    ASSERT_GE(mixed.min_alpha_slack, -kSweepAlphaTol);
}
