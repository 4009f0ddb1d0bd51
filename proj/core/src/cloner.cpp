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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clonebound/bounds.hpp"
#include "clonebound/errors.hpp"
#include "clonebound/fidelity.hpp"
#include "clonebound/optim.hpp"

namespace clonebound {

namespace {

std::size_t int_pow(std::size_t base, int exp) {
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

}  // namespace

CloneMachine::CloneMachine(std::size_t register_dim,
                           std::size_t extra_dim,
                           std::size_t env_dim,
                           ComplexMatrix unitary,
                           std::vector<DensityMatrix> ancilla_inputs)
    : register_dim_(register_dim),
      extra_dim_(extra_dim),
      env_dim_(env_dim),
      unitary_(std::move(unitary)),
      ancilla_inputs_(std::move(ancilla_inputs)) {
    if (register_dim_ < 1 || extra_dim_ < 1 || env_dim_ < 1) {
        throw Error(ErrorKind::DimensionMismatch, "machine layout dimensions must be positive");
    }
    const auto total = static_cast<Eigen::Index>(total_dim());
    if (unitary_.rows() != total || unitary_.cols() != total) {
        std::ostringstream os;
        os << "unitary is " << unitary_.rows() << "x" << unitary_.cols() << ", layout needs " << total << "x"
           << total;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const double residual = unitarity_residual(unitary_);
    if (residual > kUnitaryTol) {
        std::ostringstream os;
        os << "||U^dagger U - I||_F = " << residual;
        throw Error(ErrorKind::NonUnitary, os.str());
    }
    for (const auto& a : ancilla_inputs_) {
        if (a.dim() != extra_dim_ * env_dim_) {
            std::ostringstream os;
            os << "ancilla input has dimension " << a.dim() << ", B (x) E needs " << extra_dim_ * env_dim_;
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
    }
}

CloneMachine CloneMachine::with_unitary(ComplexMatrix unitary) const {
    return CloneMachine(register_dim_, extra_dim_, env_dim_, std::move(unitary), ancilla_inputs_);
}

std::optional<std::size_t> ancilla_env_dim(const CloningProblem& problem) {
    if (!problem.ancilla()) {
        return std::nullopt;
    }
    const std::size_t extra = int_pow(problem.dim(), problem.copies_extra());
    const std::size_t dim = problem.ancilla()->dim();
    if (dim % extra != 0) {
        std::ostringstream os;
        os << "ancilla dimension " << dim << " is not a multiple of d^M = " << extra;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    return dim / extra;
}

std::vector<DensityMatrix> default_ancilla_inputs(const CloningProblem& problem, std::size_t env_dim) {
    if (const auto env = ancilla_env_dim(problem)) {
        if (*env != env_dim) {
            std::ostringstream os;
            os << "ancilla states imply environment dimension " << *env << ", machine has " << env_dim;
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
        return problem.ancilla()->states();
    }
    const std::size_t extra = int_pow(problem.dim(), problem.copies_extra());
    return std::vector<DensityMatrix>(problem.size(), DensityMatrix::basis(extra * env_dim, 0));
}

CloneMachine identity_machine(const CloningProblem& problem, std::size_t env_dim) {
    return identity_machine(problem, env_dim, default_ancilla_inputs(problem, env_dim));
}

CloneMachine identity_machine(const CloningProblem& problem,
                              std::size_t env_dim,
                              std::vector<DensityMatrix> ancilla_inputs) {
    const std::size_t reg = int_pow(problem.dim(), problem.copies_in());
    const std::size_t extra = int_pow(problem.dim(), problem.copies_extra());
    const auto total = static_cast<Eigen::Index>(reg * extra * env_dim);
    return CloneMachine(reg, extra, env_dim, ComplexMatrix::Identity(total, total), std::move(ancilla_inputs));
}

namespace {

void check_layout(const CloneMachine& machine, const CloningProblem& problem) {
    const std::size_t reg = int_pow(problem.dim(), problem.copies_in());
    const std::size_t extra = int_pow(problem.dim(), problem.copies_extra());
    if (machine.register_dim() != reg || machine.extra_dim() != extra) {
        std::ostringstream os;
        os << "machine registers (" << machine.register_dim() << ", " << machine.extra_dim()
           << ") do not match problem (" << reg << ", " << extra << ")";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (machine.ancilla_inputs().size() != problem.size()) {
        throw Error(ErrorKind::DimensionMismatch, "machine ancilla inputs and problem labels differ in count");
    }
}

ComplexMatrix clone_matrix(const CloneMachine& machine, const ComplexMatrix& input) {
    const ComplexMatrix evolved = machine.unitary() * input * machine.unitary().adjoint();
    const std::array<std::size_t, 2> dims{machine.register_dim() * machine.extra_dim(), machine.env_dim()};
    const std::array<std::size_t, 1> keep{0};
    return partial_trace(evolved, dims, keep);
}

}  // namespace

DensityMatrix apply(const CloneMachine& machine, const CloningProblem& problem, std::size_t j) {
    check_layout(machine, problem);
    if (j >= problem.size()) {
        throw Error(ErrorKind::DimensionMismatch, "label out of range");
    }
    const DensityMatrix input =
        problem.input().state(j).tensor_power(problem.copies_in()).tensor(machine.ancilla_inputs()[j]);
    return DensityMatrix::validate(clone_matrix(machine, input.matrix()));
}

double global_fidelity(const CloneMachine& machine, const CloningProblem& problem) {
    double total = 0.0;
    for (std::size_t j = 0; j < problem.size(); ++j) {
        const DensityMatrix target = problem.input().state(j).tensor_power(problem.copies_out());
        total += problem.input().prior(j) * fidelity(apply(machine, problem, j), target);
    }
    return std::clamp(total, 0.0, 1.0);
}

double reference_bound(const CloningProblem& problem) {
    return problem.size() == 2 ? theorem1_bound(problem).bound : theorem2_bound(problem).bound;
}

std::size_t generator_param_count(std::size_t dim) {
    return dim * dim;
}

ComplexMatrix hermitian_generator(std::span<const double> params, std::size_t dim) {
    if (params.size() != generator_param_count(dim)) {
        std::ostringstream os;
        os << "generator for dimension " << dim << " needs " << generator_param_count(dim) << " parameters, got "
           << params.size();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    std::size_t at = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        h(i, i) = params[at++];
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = i + 1; k < n; ++k) {
            const double re = params[at];
            const double im = params[at + 1];
            at += 2;
            h(i, k) = Complex(re, im);
            h(k, i) = Complex(re, -im);
        }
    }
    return h;
}

ComplexMatrix unitary_from_params(std::span<const double> params, std::size_t dim) {
    return expi_hermitian(hermitian_generator(params, dim));
}

std::string_view ansatz_name(Ansatz ansatz) {
    return ansatz == Ansatz::Full ? "full" : "ab-pure";
}

std::optional<Ansatz> parse_ansatz(std::string_view name) {
    if (name == "full") {
        return Ansatz::Full;
    }
    if (name == "ab-pure") {
        return Ansatz::AbPure;
    }
    return std::nullopt;
}

namespace {

// Global fidelity for a fixed problem and layout, with everything that does
// not depend on the unitary precomputed. F is evaluated as
// (Tr sqrt(sqrt(target) clone sqrt(target)))^2.
class FidelityEvaluator {
  public:
    FidelityEvaluator(const CloningProblem& problem, const CloneMachine& layout)
        : layout_(layout), priors_(problem.input().priors()) {
        for (std::size_t j = 0; j < problem.size(); ++j) {
            const DensityMatrix& rho = problem.input().state(j);
            inputs_.push_back(kron(rho.tensor_power(problem.copies_in()).matrix(),
                                   layout.ancilla_inputs()[j].matrix()));
            root_targets_.push_back(sqrt_psd(rho.tensor_power(problem.copies_out()).matrix()));
        }
    }

    double operator()(const ComplexMatrix& unitary) const {
        const std::array<std::size_t, 2> dims{layout_.register_dim() * layout_.extra_dim(), layout_.env_dim()};
        const std::array<std::size_t, 1> keep{0};
        double total = 0.0;
        for (std::size_t j = 0; j < inputs_.size(); ++j) {
            if (priors_[j] == 0.0) {
                continue;
            }
            const ComplexMatrix clone = partial_trace(unitary * inputs_[j] * unitary.adjoint(), dims, keep);
            ComplexMatrix inner = root_targets_[j] * clone * root_targets_[j];
            inner = 0.5 * (inner + inner.adjoint());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(inner, Eigen::EigenvaluesOnly);
            double root = 0.0;
            for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
                root += std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
            }
            total += priors_[j] * std::min(1.0, root * root);
        }
        return total;
    }

  private:
    const CloneMachine& layout_;
    std::vector<double> priors_;
    std::vector<ComplexMatrix> inputs_;
    std::vector<ComplexMatrix> root_targets_;
};

}  // namespace

OptimizeResult optimize(const CloningProblem& problem, const OptimizeOptions& options) {
    if (options.budget < 1) {
        throw Error(ErrorKind::RangeError, "optimize: budget must be at least 1");
    }
    const std::size_t d = problem.dim();
    const std::size_t reg = int_pow(d, problem.copies_in());
    const std::size_t extra = int_pow(d, problem.copies_extra());

    std::size_t env = 1;
    std::vector<DensityMatrix> ancilla;
    if (options.ansatz == Ansatz::AbPure) {
        if (problem.has_ancilla_information()) {
            throw Error(ErrorKind::RangeError, "the ab-pure ansatz takes no label-dependent ancilla states");
        }
        ancilla.assign(problem.size(), DensityMatrix::basis(extra, 0));
    } else {
        env = options.env_dim.value_or(ancilla_env_dim(problem).value_or(reg));
        if (env < 1) {
            throw Error(ErrorKind::RangeError, "optimize: env_dim must be at least 1");
        }
        ancilla = default_ancilla_inputs(problem, env);
    }
    const std::size_t dim = reg * extra * env;
    const auto n = static_cast<Eigen::Index>(dim);
    const CloneMachine layout(reg, extra, env, ComplexMatrix::Identity(n, n), ancilla);
    const FidelityEvaluator evaluate(problem, layout);

    Rng rng(options.seed);
    std::size_t used = 0;
    ComplexMatrix best_unitary = ComplexMatrix::Identity(n, n);
    double best_value = evaluate(best_unitary);
    ++used;

    // Local search around a base unitary: U = base * exp(iH(params)), params start at 0.
    auto local_search = [&](const ComplexMatrix& base, double step, std::size_t evals) {
        NelderMeadOptions nm;
        nm.initial_step = step;
        nm.f_tol = 1e-13;
        nm.x_tol = 1e-9;
        nm.max_evaluations = evals;
        auto objective = [&](std::span<const double> x) { return -evaluate(base * unitary_from_params(x, dim)); };
        const auto r = nelder_mead_minimize(objective, std::vector<double>(generator_param_count(dim), 0.0), nm);
        used += r.evaluations;
        return std::pair<ComplexMatrix, double>{base * unitary_from_params(r.x, dim), -r.value};
    };

    const std::size_t params = generator_param_count(dim);
    const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
    // Exploration: a short run from each of `restarts` Haar-random bases.
    const std::size_t explore_each = std::max<std::size_t>(params + 2, options.budget / (4 * restarts));
    for (std::size_t r = 0; r < restarts && used + explore_each <= options.budget; ++r) {
        const ComplexMatrix base = random_unitary(dim, rng);
        auto [u, value] = local_search(base, 0.5, explore_each);
        if (value > best_value) {
            best_value = value;
            best_unitary = std::move(u);
        }
    }

    // Refinement: repeatedly re-centre the simplex on the incumbent and shrink
    // the step when a cycle fails to improve.
    SearchStatus status = SearchStatus::BudgetExhausted;
    double step = 0.2;
    const std::size_t cycle = std::max<std::size_t>(params + 2, 20 * params);
    while (used < options.budget) {
        const std::size_t evals = std::min(cycle, options.budget - used);
        if (evals < params + 2) {
            break;
        }
        auto [u, value] = local_search(best_unitary, step, evals);
        if (value > best_value + 1e-12) {
            best_value = value;
            best_unitary = std::move(u);
        } else {
            step *= 0.5;
            if (step < 1e-7) {
                status = SearchStatus::Converged;
                break;
            }
        }
    }

    // Re-orthonormalize so the stored machine passes the unitarity check
    // after many compositions.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(best_unitary);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex diag = rr(i, i);
        if (std::abs(diag) > 0.0) {
            q.col(i) *= diag / std::abs(diag);
        }
    }
    CloneMachine machine = layout.with_unitary(q);
    const double achieved = global_fidelity(machine, problem);
    const double bound = reference_bound(problem);
    return OptimizeResult{std::move(machine), achieved, bound, bound - achieved, used, status};
}

ProblemGenerator random_two_state_problems(std::size_t dim) {
    return [dim](Rng& rng, std::size_t env_dim) {
        std::uniform_int_distribution<std::size_t> rank_of(1, dim);
        std::uniform_real_distribution<double> prior(0.05, 0.95);
        std::bernoulli_distribution informed(0.5);
        std::vector<DensityMatrix> states;
        for (int j = 0; j < 2; ++j) {
            states.push_back(random_density_matrix(dim, rng, rank_of(rng)));
        }
        const double p = prior(rng);
        std::optional<Ensemble> ancilla;
        if (informed(rng)) {
            const std::size_t anc_dim = dim * env_dim;
            std::uniform_int_distribution<std::size_t> anc_rank(1, anc_dim);
            std::vector<DensityMatrix> anc;
            for (int j = 0; j < 2; ++j) {
                anc.push_back(random_density_matrix(anc_dim, rng, anc_rank(rng)));
            }
            ancilla = Ensemble::uniform(std::move(anc));
        }
        return CloningProblem(Ensemble(std::move(states), {p, 1.0 - p}), std::move(ancilla), 1, 2);
    };
}

SweepReport verify_bound_sweep(const ProblemGenerator& generator, const SweepOptions& options) {
    SweepReport report;
    report.trials = options.trials;
    if (options.trials == 0) {
        return report;
    }
    if (options.env_dims.empty()) {
        throw Error(ErrorKind::RangeError, "verify_bound_sweep: no environment dimensions");
    }
    report.min_bound_slack = report.min_chain_slack = report.min_alpha_slack = 1e300;
    report.max_bound_slack = -1e300;
    Rng rng(options.seed);
    for (std::size_t t = 0; t < options.trials; ++t) {
        const std::size_t env = options.env_dims[t % options.env_dims.size()];
        const CloningProblem problem = generator(rng, env);
        if (problem.size() != 2) {
            throw Error(ErrorKind::ArityError, "verify_bound_sweep expects two-state problems");
        }
        const CloneMachine identity = identity_machine(problem, env);
        const std::size_t dim = identity.total_dim();

        MachineSource source = options.machines;
        if (source == MachineSource::Mixed) {
            source = t % 3 == 1 ? MachineSource::Identity : MachineSource::Haar;
        }
        ComplexMatrix u;
        if (source == MachineSource::Identity) {
            u = identity.unitary();
        } else if (options.machines == MachineSource::Mixed && t % 3 == 2) {
            // Small rotation away from the identity.
            u = expi_hermitian(0.3 * random_hermitian(dim, rng));
        } else {
            u = random_unitary(dim, rng);
        }
        const CloneMachine machine = identity.with_unitary(std::move(u));

        const BoundReport bound = theorem1_bound(problem);
        const PairwiseAngles& pair = bound.angles.front();
        const DensityMatrix clone1 = apply(machine, problem, 0);
        const DensityMatrix clone2 = apply(machine, problem, 1);
        const double f1 = fidelity(clone1, problem.input().state(0).tensor_power(problem.copies_out()));
        const double f2 = fidelity(clone2, problem.input().state(1).tensor_power(problem.copies_out()));
        const double fg = problem.input().prior(0) * f1 + problem.input().prior(1) * f2;

        const double bound_slack = bound.bound - fg;
        const double chain_slack = Angle::from_fidelity(f1).radians() + Angle::from_fidelity(f2).radians() -
                                   (pair.delta_l.radians() - pair.alpha.radians());
        const double alpha_slack = fidelity(clone1, clone2) - pair.fidelity_n * pair.ancilla_fidelity;

        report.min_bound_slack = std::min(report.min_bound_slack, bound_slack);
        report.max_bound_slack = std::max(report.max_bound_slack, bound_slack);
        report.min_chain_slack = std::min(report.min_chain_slack, chain_slack);
        report.min_alpha_slack = std::min(report.min_alpha_slack, alpha_slack);
        if (bound_slack < -kSweepBoundTol) {
            report.counterexamples.push_back({t, "bound", bound_slack, problem, machine});
        }
        if (chain_slack < -kSweepChainTol) {
            report.counterexamples.push_back({t, "angle-chain", chain_slack, problem, machine});
        }
        if (alpha_slack < -kSweepAlphaTol) {
            report.counterexamples.push_back({t, "alpha", alpha_slack, problem, machine});
        }
    }
    return report;
}

}  // namespace clonebound
