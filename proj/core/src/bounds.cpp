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

#include "clonebound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "clonebound/errors.hpp"
#include "clonebound/optim.hpp"
#include "clonebound/random.hpp"

namespace clonebound {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void require_arity(const CloningProblem& problem, bool ok, const char* expected) {
    if (!ok) {
        std::ostringstream os;
        os << "expected " << expected << " states, got n = " << problem.size();
        throw Error(ErrorKind::ArityError, os.str());
    }
}

}  // namespace

std::string_view regime_name(Regime regime) {
    return regime == Regime::Restricted ? "restricted" : "saturated";
}

Regime classify_regime(double fidelity_extra, double ancilla_fidelity) {
    return fidelity_extra < ancilla_fidelity - kRegimeTol ? Regime::Restricted : Regime::Saturated;
}

double PairwiseAngles::constraint() const {
    if (regime == Regime::Saturated) {
        return 0.0;
    }
    return std::max(0.0, delta_l.radians() - alpha.radians());
}

std::vector<PairwiseAngles> pairwise_angles(const CloningProblem& problem) {
    const std::size_t n = problem.size();
    const auto& states = problem.input().states();
    std::vector<PairwiseAngles> out;
    out.reserve(n * (n - 1) / 2);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            PairwiseAngles a;
            a.j = j;
            a.k = k;
            const double single = fidelity(states[j], states[k]);
            a.fidelity_n = std::pow(single, problem.copies_in());
            a.fidelity_m = std::pow(single, problem.copies_extra());
            a.fidelity_l = std::pow(single, problem.copies_out());
            a.ancilla_fidelity = problem.ancilla_fidelity(j, k);
            a.delta_n = Angle::from_fidelity(a.fidelity_n);
            a.delta_m = Angle::from_fidelity(a.fidelity_m);
            a.delta_l = Angle::from_fidelity(a.fidelity_l);
            a.alpha = Angle::from_fidelity(a.fidelity_n * a.ancilla_fidelity);
            a.regime = classify_regime(a.fidelity_m, a.ancilla_fidelity);
            out.push_back(a);
        }
    }
    return out;
}

double two_state_limit(double p, double q, double a) {
    const double s = std::sin(a);
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * p * q * s * s)));
}

BoundReport pairwise_bound(const CloningProblem& problem) {
    require_arity(problem, problem.size() >= 2, "n >= 2");
    const std::size_t n = problem.size();
    const auto& priors = problem.input().priors();
    BoundReport report;
    report.angles = pairwise_angles(problem);
    report.bound = 0.0;
    for (const auto& a : report.angles) {
        PairTerm term;
        term.j = a.j;
        term.k = a.k;
        term.regime = a.regime;
        term.weight = priors[a.j] + priors[a.k];
        if (a.regime == Regime::Restricted && term.weight > 0.0) {
            const double pj = priors[a.j] / term.weight;
            const double pk = priors[a.k] / term.weight;
            term.conditional = two_state_limit(pj, pk, a.delta_l.radians() - a.alpha.radians());
        } else {
            term.conditional = 1.0;
        }
        term.contribution = term.weight * term.conditional / static_cast<double>(n - 1);
        report.bound += term.contribution;
        report.terms.push_back(term);
    }
    report.bound = std::clamp(report.bound, 0.0, 1.0);
    return report;
}

BoundReport theorem1_bound(const CloningProblem& problem) {
    require_arity(problem, problem.size() == 2, "n = 2");
    return pairwise_bound(problem);
}

BoundReport theorem2_bound(const CloningProblem& problem) {
    require_arity(problem, problem.size() > 2, "n > 2");
    return pairwise_bound(problem);
}

double equal_priors_bound(const CloningProblem& problem) {
    require_arity(problem, problem.size() >= 2, "n >= 2");
    const std::size_t n = problem.size();
    const double uniform = 1.0 / static_cast<double>(n);
    for (double p : problem.input().priors()) {
        if (std::abs(p - uniform) > 1e-12) {
            throw Error(ErrorKind::RangeError, "equal_priors_bound: priors are not all 1/n");
        }
    }
    double sum = 0.0;
    for (const auto& a : pairwise_angles(problem)) {
        sum += a.regime == Regime::Restricted ? std::cos(a.delta_l.radians() - a.alpha.radians()) : 1.0;
    }
    return 0.5 + sum / static_cast<double>(n * (n - 1));
}

double asymptotic_bound(const CloningProblem& problem) {
    require_arity(problem, problem.size() == 2, "n = 2");
    const double single = fidelity(problem.input().state(0), problem.input().state(1));
    if (single >= 1.0 - kRegimeTol) {
        std::ostringstream os;
        os << "asymptotic limit needs distinct states, F(rho_1, rho_2) = " << single;
        throw Error(ErrorKind::DegenerateStates, os.str());
    }
    const double p1 = problem.input().prior(0);
    const double p2 = problem.input().prior(1);
    const double overlap = std::pow(single, problem.copies_in()) * problem.ancilla_fidelity(0, 1);
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * p1 * p2 * overlap)));
}

LemmaResult lemma_fmax(double p, double q, double a) {
    if (!(p > 0.0 && q > 0.0) || std::abs(p + q - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "lemma needs p, q > 0 with p + q = 1, got p = " << p << ", q = " << q;
        throw Error(ErrorKind::RangeError, os.str());
    }
    if (!(a >= -1e-12 && a <= kHalfPi + 1e-12)) {
        std::ostringstream os;
        os << "lemma parameter a = " << a << " outside [0, pi/2]";
        throw Error(ErrorKind::RangeError, os.str());
    }
    a = std::clamp(a, 0.0, kHalfPi);

    // On x + y = a write x = (a + phi)/2; the stationary point has
    // tan(phi) = (q - p) tan(a) with cos(phi) >= 0 and sign(sin phi) = sign(q - p).
    double phi = 0.0;
    if (a == kHalfPi) {
        if (q > p) {
            phi = kHalfPi;
        } else if (p > q) {
            phi = -kHalfPi;
        }
    } else {
        phi = std::atan((q - p) * std::tan(a));
    }
    LemmaResult r;
    r.fmax = two_state_limit(p, q, a);
    r.x = std::clamp(0.5 * (a + phi), 0.0, a);
    r.y = a - r.x;
    return r;
}

double lemma_stationarity_residual(double p, double q, double a, double x) {
    const double phi = 2.0 * x - a;
    return std::sin(phi) * std::cos(a) - (q - p) * std::sin(a) * std::cos(phi);
}

namespace {

// The program sum_j p_j cos^2 delta_j over the box with pairwise sum constraints.
// Searched in reduced coordinates: the first n-1 angles are free, the last
// one (and then every other) is lowered to its smallest feasible value,
// which is optimal coordinate-wise because cos^2 decreases on [0, pi/2].
class RefinedProgram {
  public:
    RefinedProgram(std::vector<double> priors, std::vector<double> rhs)
        : n_(priors.size()), priors_(std::move(priors)), rhs_(std::move(rhs)) {
    }

    std::size_t size() const {
        return n_;
    }

    double rhs(std::size_t j, std::size_t k) const {
        return rhs_[j * n_ + k];
    }

    double objective(std::span<const double> delta) const {
        double f = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double c = std::cos(delta[j]);
            f += priors_[j] * c * c;
        }
        return f;
    }

    std::vector<double> complete(std::span<const double> free) const {
        std::vector<double> delta(n_, 0.0);
        for (std::size_t j = 0; j + 1 < n_; ++j) {
            delta[j] = std::clamp(free[j], 0.0, kHalfPi);
        }
        repair_free(delta);
        delta[n_ - 1] = lowest_feasible(delta, n_ - 1);
        for (std::size_t j = 0; j < n_; ++j) {
            delta[j] = lowest_feasible(delta, j);
        }
        return delta;
    }

    double reduced_value(std::span<const double> free) const {
        const std::vector<double> delta = complete(free);
        return objective(delta);
    }

    bool feasible(std::span<const double> delta, double tol) const {
        for (std::size_t j = 0; j < n_; ++j) {
            if (delta[j] < -tol || delta[j] > kHalfPi + tol) {
                return false;
            }
            for (std::size_t k = j + 1; k < n_; ++k) {
                if (delta[j] + delta[k] < rhs(j, k) - tol) {
                    return false;
                }
            }
        }
        return true;
    }

  private:
    double lowest_feasible(const std::vector<double>& delta, std::size_t j) const {
        double need = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            if (k != j) {
                need = std::max(need, rhs(j, k) - delta[k]);
            }
        }
        return std::min(need, kHalfPi);
    }

    // Raise violating pairs among the free coordinates, splitting the deficit.
    void repair_free(std::vector<double>& delta) const {
        const std::size_t m = n_ - 1;
        for (int sweep = 0; sweep < 64; ++sweep) {
            bool changed = false;
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = j + 1; k < m; ++k) {
                    const double deficit = rhs(j, k) - delta[j] - delta[k];
                    if (deficit > 0.0) {
                        const double raised = std::min(kHalfPi, delta[j] + 0.5 * deficit);
                        const double rest = deficit - (raised - delta[j]);
                        delta[j] = raised;
                        delta[k] = std::min(kHalfPi, delta[k] + rest);
                        changed = true;
                    }
                }
            }
            if (!changed) {
                return;
            }
        }
    }

    std::size_t n_;
    std::vector<double> priors_;
    std::vector<double> rhs_;
};

struct Candidate {
    double value = -1.0;
    std::vector<double> delta;
};

// Larger value wins; values within 1e-14 fall back to the lexicographically
// smaller angle vector so the merge does not depend on evaluation order.
void offer(Candidate& best, double value, std::vector<double> delta) {
    if (value > best.value + 1e-14 ||
        (std::abs(value - best.value) <= 1e-14 &&
         std::lexicographical_compare(delta.begin(), delta.end(), best.delta.begin(), best.delta.end()))) {
        best.value = value;
        best.delta = std::move(delta);
    }
}

std::vector<double> polish(const RefinedProgram& program, std::vector<double> start) {
    NelderMeadOptions nm;
    nm.initial_step = 0.05;
    nm.f_tol = 1e-16;
    nm.x_tol = 1e-11;
    nm.max_evaluations = 4000 * program.size();
    const auto result = nelder_mead_minimize(
        [&](std::span<const double> x) { return -program.reduced_value(x); }, std::move(start), nm);
    return result.x;
}

}  // namespace

RefinedResult refined_bound(const CloningProblem& problem, const RefinedOptions& options) {
    require_arity(problem, problem.size() >= 2, "n >= 2");
    const std::size_t n = problem.size();
    std::vector<double> rhs(n * n, 0.0);
    for (const auto& a : pairwise_angles(problem)) {
        rhs[a.j * n + a.k] = rhs[a.k * n + a.j] = a.constraint();
    }
    const RefinedProgram program(problem.input().priors(), rhs);
    const std::size_t m = n - 1;

    Candidate best;
    auto consider = [&](std::span<const double> free) {
        std::vector<double> delta = program.complete(free);
        const double value = program.objective(delta);
        offer(best, value, std::move(delta));
    };

    std::vector<std::vector<double>> starts;
    starts.emplace_back(m, 0.0);
    {
        std::vector<double> half(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                half[j] = std::max(half[j], 0.5 * program.rhs(j, k));
            }
        }
        starts.push_back(std::move(half));
    }
    Rng rng(options.seed);
    std::uniform_real_distribution<double> uniform(0.0, kHalfPi);
    while (starts.size() < std::max<std::size_t>(options.starts, 2)) {
        std::vector<double> x(m);
        for (double& v : x) {
            v = uniform(rng);
        }
        starts.push_back(std::move(x));
    }

    // Exhaustive pass over the free coordinates for small n.
    if (n <= 3) {
        const double step = std::max(options.grid_step, 1e-4);
        const auto count = static_cast<std::size_t>(std::ceil(kHalfPi / step));
        auto node = [&](std::size_t i) { return std::min(kHalfPi, static_cast<double>(i) * step); };
        Candidate grid_best;
        std::vector<double> free(m);
        if (m == 1) {
            for (std::size_t i = 0; i <= count; ++i) {
                free[0] = node(i);
                std::vector<double> delta = program.complete(free);
                offer(grid_best, program.objective(delta), free);
            }
        } else {
            for (std::size_t i = 0; i <= count; ++i) {
                for (std::size_t l = 0; l <= count; ++l) {
                    free[0] = node(i);
                    free[1] = node(l);
                    std::vector<double> delta = program.complete(free);
                    offer(grid_best, program.objective(delta), free);
                }
            }
        }
        starts.push_back(grid_best.delta);
    }

    for (auto& start : starts) {
        consider(start);
        consider(polish(program, start));
    }

    RefinedResult result;
    result.bound = std::clamp(best.value, 0.0, 1.0);
    result.deltas = best.delta;
    return result;
}

std::vector<PairResidual> tightness_gap(const CloningProblem& problem, const RefinedResult& refined) {
    if (refined.deltas.size() != problem.size()) {
        throw Error(ErrorKind::DimensionMismatch, "tightness_gap: angle vector does not match the problem");
    }
    std::vector<PairResidual> out;
    for (const auto& a : pairwise_angles(problem)) {
        out.push_back(PairResidual{a.j, a.k,
                                   refined.deltas[a.j] + refined.deltas[a.k] -
                                       (a.delta_l.radians() - a.alpha.radians())});
    }
    return out;
}

std::vector<PairResidual> tightness_gap(const CloningProblem& problem, const RefinedOptions& options) {
    return tightness_gap(problem, refined_bound(problem, options));
}

}  // namespace clonebound
