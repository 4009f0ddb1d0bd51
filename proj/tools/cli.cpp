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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "clonebound/bounds.hpp"
#include "clonebound/cloner.hpp"
#include "clonebound/errors.hpp"
#include "clonebound/fidelity.hpp"
#include "clonebound/random.hpp"
#include "clonebound/version.hpp"
#include "problem_io.hpp"

namespace clonebound::cli {

namespace {

constexpr int kAngleDigits = 12;
constexpr std::uint64_t kDefaultSeed = 1;

constexpr const char* kFooter =
    "Fidelity convention: F(chi, omega) = (Tr sqrt(sqrt(chi) omega sqrt(chi)))^2 (squared form);\n"
    "angles are arccos sqrt(F), in radians.\n"
    "Exit codes: 0 success, 1 property or bound violation, 2 input error, 3 mode mismatch.\n"
    "CLONEBOUND_SEED sets the default seed; --seed overrides it.";

/// Raised for argument values that parse but are out of range.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ModeMismatch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("CLONEBOUND_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || env[0] == '-') {
            throw InputError(std::string("CLONEBOUND_SEED is not an unsigned integer: ") + env);
        }
        return v;
    }
    return kDefaultSeed;
}

double angle_value(double radians) {
    return round_significant(radians, kAngleDigits);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_angle(double radians) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", radians);
    return buf;
}

Json report_header(const char* command, std::optional<std::uint64_t> seed) {
    Json doc;
    doc["schema"] = 1;
    doc["tool"] = "clonebound";
    doc["version"] = kVersion;
    doc["command"] = command;
    if (seed) {
        doc["seed"] = *seed;
    }
    return doc;
}

Json problem_summary(const CloningProblem& problem) {
    Json doc;
    doc["n"] = problem.size();
    doc["dim"] = problem.dim();
    doc["N"] = problem.copies_in();
    doc["L"] = problem.copies_out();
    doc["priors"] = problem.input().priors();
    doc["ancilla_information"] = problem.has_ancilla_information();
    return doc;
}

Json pairs_json(const BoundReport& report) {
    Json pairs = Json::array();
    for (std::size_t i = 0; i < report.angles.size(); ++i) {
        const PairwiseAngles& a = report.angles[i];
        const PairTerm& t = report.terms[i];
        Json p;
        p["j"] = a.j;
        p["k"] = a.k;
        p["regime"] = std::string(regime_name(a.regime));
        p["fidelity_N"] = a.fidelity_n;
        p["fidelity_M"] = a.fidelity_m;
        p["fidelity_L"] = a.fidelity_l;
        p["ancilla_fidelity"] = a.ancilla_fidelity;
        p["delta_N"] = angle_value(a.delta_n.radians());
        p["delta_M"] = angle_value(a.delta_m.radians());
        p["delta_L"] = angle_value(a.delta_l.radians());
        p["alpha"] = angle_value(a.alpha.radians());
        p["weight"] = t.weight;
        p["conditional"] = t.conditional;
        p["contribution"] = t.contribution;
        pairs.push_back(std::move(p));
    }
    return pairs;
}

std::string overall_regime(const BoundReport& report) {
    const auto saturated = std::count_if(report.angles.begin(), report.angles.end(), [](const PairwiseAngles& a) {
        return a.regime == Regime::Saturated;
    });
    if (saturated == 0) {
        return "restricted";
    }
    if (static_cast<std::size_t>(saturated) == report.angles.size()) {
        return "saturated";
    }
    return "mixed";
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw InputError(out_path + ": cannot open output file");
    }
    file << text;
}

void emit_json(const Json& doc, const std::string& out_path, std::ostream& out) {
    emit(doc.dump(2) + "\n", out_path, out);
}

bool has_equal_priors(const CloningProblem& problem) {
    const double target = 1.0 / static_cast<double>(problem.size());
    return std::all_of(problem.input().priors().begin(), problem.input().priors().end(), [&](double p) {
        return std::abs(p - target) <= 1e-12;
    });
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
    std::string problem;
    std::string mode;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

int cmd_bound(const BoundArgs& args, std::ostream& out) {
    const CloningProblem problem = load_problem(args.problem);
    const std::size_t n = problem.size();
    const std::string mode = args.mode.empty() ? (n == 2 ? "theorem1" : "theorem2") : args.mode;
    if ((mode == "theorem1" || mode == "asymptotic") && n != 2) {
        throw ModeMismatch("mode " + mode + " needs exactly 2 states, problem has " + std::to_string(n));
    }
    if (mode == "theorem2" && n < 3) {
        throw ModeMismatch("mode theorem2 needs at least 3 states, problem has " + std::to_string(n));
    }
    const std::uint64_t seed = resolve_seed(args.seed);

    const BoundReport pairwise = pairwise_bound(problem);
    double value = pairwise.bound;
    std::optional<RefinedResult> refined;
    if (mode == "theorem1") {
        value = theorem1_bound(problem).bound;
    } else if (mode == "theorem2") {
        value = theorem2_bound(problem).bound;
    } else if (mode == "asymptotic") {
        value = asymptotic_bound(problem);
    } else {
        RefinedOptions options;
        options.seed = seed;
        refined = refined_bound(problem, options);
        value = refined->bound;
    }

    if (args.format == "csv") {
        std::ostringstream os;
        os << "record,j,k,regime,value,delta_N,delta_M,delta_L,alpha\n";
        for (std::size_t i = 0; i < pairwise.angles.size(); ++i) {
            const PairwiseAngles& a = pairwise.angles[i];
            os << "pair," << a.j << "," << a.k << "," << regime_name(a.regime) << ","
               << format_value(pairwise.terms[i].contribution) << "," << format_angle(a.delta_n.radians()) << ","
               << format_angle(a.delta_m.radians()) << "," << format_angle(a.delta_l.radians()) << ","
               << format_angle(a.alpha.radians()) << "\n";
        }
        os << "bound,,," << overall_regime(pairwise) << "," << format_value(value) << ",,,,\n";
        emit(os.str(), args.out, out);
        return kExitOk;
    }

    Json doc = report_header("bound", seed);
    doc["mode"] = mode;
    doc["problem"] = problem_summary(problem);
    doc["bound"] = value;
    doc["regime"] = overall_regime(pairwise);
    doc["pairs"] = pairs_json(pairwise);
    if (mode == "theorem2" && has_equal_priors(problem)) {
        const double closed = equal_priors_bound(problem);
        doc["cross_check"] = Json{{"equal_priors_bound", closed}, {"difference", std::abs(closed - value)}};
    }
    if (refined) {
        Json deltas = Json::array();
        for (double d : refined->deltas) {
            deltas.push_back(angle_value(d));
        }
        doc["deltas"] = std::move(deltas);
        Json residuals = Json::array();
        for (const PairResidual& r : tightness_gap(problem, *refined)) {
            residuals.push_back(Json{{"j", r.j}, {"k", r.k}, {"residual", r.residual}});
        }
        doc["constraint_residuals"] = std::move(residuals);
        doc["pairwise_bound"] = pairwise.bound;
    }
    emit_json(doc, args.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    std::size_t trials = 1000;
    std::size_t dim = 2;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::string out;
};

struct SuiteOutcome {
    double tolerance = 0.0;
    std::optional<double> min_residual;
    std::optional<double> max_residual;
    Json counterexamples = Json::array();
    Json extra;

    void record(double residual) {
        min_residual = min_residual ? std::min(*min_residual, residual) : residual;
        max_residual = max_residual ? std::max(*max_residual, residual) : residual;
    }
};

DensityMatrix random_state(std::size_t dim, Rng& rng) {
    std::uniform_int_distribution<std::size_t> rank(1, dim);
    return random_density_matrix(dim, rng, rank(rng));
}

SuiteOutcome run_triangle(const VerifyArgs& a, Rng& rng) {
    SuiteOutcome s;
    s.tolerance = a.tolerance.value_or(1e-8);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const DensityMatrix chi = random_state(a.dim, rng);
        const DensityMatrix omega = random_state(a.dim, rng);
        const DensityMatrix rho = random_state(a.dim, rng);
        const double r = check_triangle(chi, omega, rho);
        s.record(r);
        if (r < -s.tolerance) {
            s.counterexamples.push_back(Json{{"trial", t},
                                             {"residual", r},
                                             {"chi", matrix_to_json(chi.matrix())},
                                             {"omega", matrix_to_json(omega.matrix())},
                                             {"rho", matrix_to_json(rho.matrix())}});
        }
    }
    return s;
}

SuiteOutcome run_monotonicity(const VerifyArgs& a, Rng& rng) {
    SuiteOutcome s;
    s.tolerance = a.tolerance.value_or(1e-8);
    const std::size_t dims[2] = {a.dim, a.dim};
    for (std::size_t t = 0; t < a.trials; ++t) {
        const DensityMatrix chi = random_state(a.dim * a.dim, rng);
        const DensityMatrix omega = random_state(a.dim * a.dim, rng);
        const std::size_t keep[1] = {t % 2};
        const MonotonicityCheck m = monotonicity_check(chi, omega, dims, keep);
        const double r = m.after - m.before;
        s.record(r);
        if (r < -s.tolerance) {
            s.counterexamples.push_back(Json{{"trial", t},
                                             {"residual", r},
                                             {"kept_subsystem", keep[0]},
                                             {"chi", matrix_to_json(chi.matrix())},
                                             {"omega", matrix_to_json(omega.matrix())}});
        }
    }
    return s;
}

SuiteOutcome run_multiplicativity(const VerifyArgs& a, Rng& rng) {
    SuiteOutcome s;
    s.tolerance = a.tolerance.value_or(1e-7);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const DensityMatrix a1 = random_state(a.dim, rng);
        const DensityMatrix b1 = random_state(a.dim, rng);
        const DensityMatrix a2 = random_state(a.dim, rng);
        const DensityMatrix b2 = random_state(a.dim, rng);
        const double joint = fidelity(a1.tensor(a2), b1.tensor(b2));
        const double r = joint - fidelity(a1, b1) * fidelity(a2, b2);
        s.record(r);
        if (std::abs(r) > s.tolerance) {
            s.counterexamples.push_back(Json{{"trial", t},
                                             {"residual", r},
                                             {"chi_1", matrix_to_json(a1.matrix())},
                                             {"omega_1", matrix_to_json(b1.matrix())},
                                             {"chi_2", matrix_to_json(a2.matrix())},
                                             {"omega_2", matrix_to_json(b2.matrix())}});
        }
    }
    return s;
}

SuiteOutcome run_measurement(const VerifyArgs& a, Rng& rng) {
    SuiteOutcome s;
    s.tolerance = a.tolerance.value_or(1e-8);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const DensityMatrix chi = random_state(a.dim, rng);
        const DensityMatrix omega = random_state(a.dim, rng);
        const ComplexMatrix effect = random_effect(a.dim, rng);
        const DeviationBound d = measurement_deviation_bound(chi, omega, effect);
        const double r = d.rhs - d.lhs;
        s.record(r);
        if (r < -s.tolerance) {
            s.counterexamples.push_back(Json{{"trial", t},
                                             {"residual", r},
                                             {"chi", matrix_to_json(chi.matrix())},
                                             {"omega", matrix_to_json(omega.matrix())},
                                             {"effect", matrix_to_json(effect)}});
        }
    }
    return s;
}

SuiteOutcome run_bound_sweep(const VerifyArgs& a, std::uint64_t seed) {
    SuiteOutcome s;
    s.tolerance = 1e-6;
    SweepOptions options;
    options.trials = a.trials;
    options.seed = seed;
    const SweepReport report = verify_bound_sweep(random_two_state_problems(a.dim), options);
    if (a.trials > 0) {
        s.record(report.min_bound_slack);
        s.record(report.max_bound_slack);
        s.extra = Json{{"min_bound_slack", report.min_bound_slack},
                       {"min_angle_chain_slack", report.min_chain_slack},
                       {"min_alpha_slack", report.min_alpha_slack}};
    }
    for (const SweepCounterexample& c : report.counterexamples) {
        Json machine;
        machine["register_dim"] = c.machine.register_dim();
        machine["extra_dim"] = c.machine.extra_dim();
        machine["env_dim"] = c.machine.env_dim();
        machine["unitary"] = matrix_to_json(c.machine.unitary());
        Json ancilla = Json::array();
        for (const DensityMatrix& u : c.machine.ancilla_inputs()) {
            ancilla.push_back(matrix_to_json(u.matrix()));
        }
        machine["ancilla_inputs"] = std::move(ancilla);
        s.counterexamples.push_back(Json{{"trial", c.trial},
                                         {"check", c.check},
                                         {"slack", c.value},
                                         {"problem", problem_to_json(c.problem)},
                                         {"machine", std::move(machine)}});
    }
    return s;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    if (args.dim < 2 || args.dim > 8) {
        throw InputError("--dim must be between 2 and 8");
    }
    if (args.tolerance && args.suite == "bound-sweep") {
        throw InputError("--tolerance does not apply to bound-sweep");
    }
    const std::uint64_t seed = resolve_seed(args.seed);
    Rng rng(seed);
    SuiteOutcome s;
    if (args.suite == "triangle") {
        s = run_triangle(args, rng);
    } else if (args.suite == "monotonicity") {
        s = run_monotonicity(args, rng);
    } else if (args.suite == "multiplicativity") {
        s = run_multiplicativity(args, rng);
    } else if (args.suite == "measurement") {
        s = run_measurement(args, rng);
    } else {
        s = run_bound_sweep(args, seed);
    }

    Json doc = report_header("verify", seed);
    doc["suite"] = args.suite;
    doc["trials"] = args.trials;
    doc["dim"] = args.dim;
    doc["tolerance"] = s.tolerance;
    doc["min_residual"] = s.min_residual ? Json(*s.min_residual) : Json(nullptr);
    doc["max_residual"] = s.max_residual ? Json(*s.max_residual) : Json(nullptr);
    if (!s.extra.is_null()) {
        doc["details"] = s.extra;
    }
    doc["violations"] = s.counterexamples.size();
    doc["counterexamples"] = s.counterexamples;
    emit_json(doc, args.out, out);
    if (!s.counterexamples.empty()) {
        err << "verify: " << s.counterexamples.size() << " violation(s) in suite " << args.suite << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
    std::string problem;
    std::size_t budget = 20000;
    std::optional<std::size_t> env_dim;
    std::string ansatz = "full";
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
    const CloningProblem problem = load_problem(args.problem);
    if (args.budget < 1) {
        throw InputError("--budget must be at least 1");
    }
    if (args.env_dim && *args.env_dim < 1) {
        throw InputError("--env-dim must be at least 1");
    }
    OptimizeOptions options;
    options.budget = args.budget;
    options.env_dim = args.env_dim;
    options.seed = resolve_seed(args.seed);
    options.ansatz = *parse_ansatz(args.ansatz);

    std::string env_source;
    if (options.ansatz == Ansatz::AbPure) {
        env_source = "none (ab-pure ansatz)";
    } else if (args.env_dim) {
        env_source = "flag";
    } else if (ancilla_env_dim(problem)) {
        env_source = "ancilla states";
    } else {
        env_source = "default d^N (engineering choice)";
    }

    const OptimizeResult result = optimize(problem, options);

    Json doc = report_header("search", options.seed);
    doc["problem"] = problem_summary(problem);
    doc["ansatz"] = std::string(ansatz_name(options.ansatz));
    doc["budget"] = options.budget;
    doc["restarts"] = options.restarts;
    doc["env_dim"] = result.machine.env_dim();
    doc["env_dim_source"] = env_source;
    doc["evaluations"] = result.evaluations;
    doc["status"] = result.status == SearchStatus::Converged ? "converged" : "budget-exhausted";
    doc["bound"] = result.bound;
    doc["achieved_fidelity"] = result.fidelity;
    doc["gap"] = result.gap;
    doc["pairs"] = pairs_json(pairwise_bound(problem));
    doc["unitary"] = matrix_to_json(result.machine.unitary());
    emit_json(doc, args.out, out);
    if (result.gap < -1e-6) {
        err << "search: achieved fidelity exceeds the bound by " << -result.gap << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string problem;
    std::string param;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<std::size_t> steps;
    std::string out;
};

std::vector<double> linear_grid(double from, double to, std::size_t steps) {
    if (steps < 1) {
        throw InputError("--steps must be at least 1");
    }
    std::vector<double> grid;
    for (std::size_t i = 0; i < steps; ++i) {
        grid.push_back(steps == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return grid;
}

bool nonincreasing(const std::vector<std::pair<double, double>>& points) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].second > points[i - 1].second + 1e-12) {
            return false;
        }
    }
    return true;
}

CloningProblem with_target_ancilla_fidelity(const CloningProblem& problem, double target) {
    const int m = problem.copies_extra();
    const DensityMatrix r1 = problem.input().state(0).tensor_power(m);
    const DensityMatrix r2 = problem.input().state(1).tensor_power(m);
    const double base = fidelity(r1, r2);
    SufficientAncilla anc = target <= base
                                ? sufficient_ancilla(r1, r2, target)
                                : sufficient_ancilla(DensityMatrix::maximally_mixed(r1.dim()),
                                                     DensityMatrix::maximally_mixed(r1.dim()), target);
    return problem.with_ancilla(Ensemble::uniform({anc.lambda, anc.upsilon}));
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
    const CloningProblem problem = load_problem(args.problem);
    const std::size_t n = problem.size();
    std::vector<std::pair<double, double>> rows;  // (param, bound)
    std::vector<std::string> regimes;
    std::vector<std::string> summary;

    auto add_row = [&](double param, const CloningProblem& p) {
        const BoundReport report = pairwise_bound(p);
        rows.emplace_back(param, report.bound);
        regimes.push_back(overall_regime(report));
    };

    if (args.param == "prior") {
        const double from = args.from.value_or(0.01);
        const double to = args.to.value_or(0.99);
        if (from < 0.0 || to > 1.0 || from > to) {
            throw InputError("prior sweep needs 0 <= --from <= --to <= 1");
        }
        const double rest = 1.0 - problem.input().prior(0);
        for (double p1 : linear_grid(from, to, args.steps.value_or(99))) {
            std::vector<double> priors(n);
            priors[0] = p1;
            for (std::size_t j = 1; j < n; ++j) {
                priors[j] = rest > 0.0 ? (1.0 - p1) * problem.input().prior(j) / rest
                                       : (1.0 - p1) / static_cast<double>(n - 1);
            }
            add_row(p1, problem.with_priors(std::move(priors)));
        }
        if (n == 2) {
            std::vector<std::pair<double, double>> by_product;
            for (const auto& [p1, b] : rows) {
                by_product.emplace_back(p1 * (1.0 - p1), b);
            }
            std::stable_sort(by_product.begin(), by_product.end(), [](const auto& x, const auto& y) {
                return x.first < y.first;
            });
            summary.push_back(std::string("summary,nonincreasing-in-p1p2,") +
                              (nonincreasing(by_product) ? "pass" : "fail"));
        }
    } else if (args.param == "L") {
        const int lo = static_cast<int>(std::ceil(args.from.value_or(problem.copies_in() + 1)));
        const int hi = static_cast<int>(std::floor(args.to.value_or(40)));
        if (lo <= problem.copies_in() || hi < lo || hi > 4096) {
            throw InputError("L sweep needs N < --from <= --to <= 4096");
        }
        const std::size_t steps = args.steps.value_or(static_cast<std::size_t>(hi - lo + 1));
        int last = -1;
        for (double x : linear_grid(lo, hi, steps)) {
            const int l = static_cast<int>(std::lround(x));
            if (l == last) {
                continue;
            }
            last = l;
            add_row(l, problem.with_copies(problem.copies_in(), l));
        }
        summary.push_back(std::string("summary,nonincreasing,") + (nonincreasing(rows) ? "pass" : "fail"));
        if (n == 2 && fidelity(problem.input().state(0), problem.input().state(1)) < 1.0 - 1e-12) {
            const double limit = asymptotic_bound(problem);
            summary.push_back("asymptotic," + format_value(limit) + "," +
                              format_value(std::abs(rows.back().second - limit)));
        }
    } else {
        if (n != 2) {
            throw InputError("ancilla-fidelity sweeps need exactly 2 states");
        }
        const int m = problem.copies_extra();
        const double base =
            fidelity(problem.input().state(0).tensor_power(m), problem.input().state(1).tensor_power(m));
        const double from = args.from.value_or(base);
        const double to = args.to.value_or(1.0);
        if (from < 0.0 || to > 1.0 || from > to) {
            throw InputError("ancilla-fidelity sweep needs 0 <= --from <= --to <= 1");
        }
        for (double target : linear_grid(from, to, args.steps.value_or(50))) {
            add_row(target, with_target_ancilla_fidelity(problem, target));
        }
        summary.push_back(std::string("summary,nonincreasing,") + (nonincreasing(rows) ? "pass" : "fail"));
    }

    std::ostringstream os;
    os << "param,bound,regime\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << format_value(rows[i].first) << "," << format_value(rows[i].second) << "," << regimes[i] << "\n";
    }
    for (const std::string& line : summary) {
        os << line << "\n";
    }
    emit(os.str(), args.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- lemma

struct LemmaArgs {
    double p = 0.5;
    double a = 0.0;
    std::optional<double> grid_step;
    std::string out;
};

/// Grid maximum of p cos^2 x + q cos^2 y over the feasible region. For each
/// grid x the best feasible y is the smallest one, max(0, a - x).
double lemma_grid_max(double p, double a, double step) {
    const double q = 1.0 - p;
    const double half_pi = std::numbers::pi / 2.0;
    const auto count = static_cast<std::size_t>(std::floor(half_pi / step));
    double best = -1.0;
    for (std::size_t i = 0; i <= count + 1; ++i) {
        const double x = std::min(half_pi, static_cast<double>(i) * step);
        const double y = std::max(0.0, a - x);
        if (y > half_pi) {
            continue;
        }
        best = std::max(best, p * std::cos(x) * std::cos(x) + q * std::cos(y) * std::cos(y));
    }
    return best;
}

int cmd_lemma(const LemmaArgs& args, std::ostream& out) {
    const LemmaResult r = lemma_fmax(args.p, 1.0 - args.p, args.a);
    Json doc = report_header("lemma", std::nullopt);
    doc["p"] = args.p;
    doc["a"] = args.a;
    doc["fmax"] = r.fmax;
    doc["argmax"] = Json{{"x", angle_value(r.x)}, {"y", angle_value(r.y)}};
    doc["stationarity_residual"] = lemma_stationarity_residual(args.p, 1.0 - args.p, args.a, r.x);
    if (args.grid_step) {
        const double step = *args.grid_step;
        if (!(step >= 1e-6 && step <= 0.1)) {
            throw InputError("--grid-check step must be in [1e-6, 0.1]");
        }
        const double grid = lemma_grid_max(args.p, args.a, step);
        doc["grid"] = Json{{"step", step}, {"max", grid}, {"difference", std::abs(grid - r.fmax)}};
    }
    emit_json(doc, args.out, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Upper limits on state-dependent cloning of mixed quantum states.", "clonebound"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    BoundArgs bound_args;
    CLI::App* bound = app.add_subcommand("bound", "Evaluate the global-fidelity limit for a problem file");
    bound->add_option("--problem", bound_args.problem, "Problem JSON file")->required();
    bound->add_option("--mode", bound_args.mode, "theorem1 (n = 2), theorem2 (n > 2), refined or asymptotic")
        ->check(CLI::IsMember({"theorem1", "theorem2", "refined", "asymptotic"}));
    bound->add_option("--out", bound_args.out, "Write the report here instead of stdout");
    bound->add_option("--format", bound_args.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    bound->add_option("--seed", bound_args.seed, "Seed for the refined search");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Run a randomized property suite");
    verify->add_option("--suite", verify_args.suite, "Property suite")
        ->required()
        ->check(CLI::IsMember({"triangle", "monotonicity", "multiplicativity", "measurement", "bound-sweep"}));
    verify->add_option("--trials", verify_args.trials, "Number of random trials")->capture_default_str();
    verify->add_option("--dim", verify_args.dim, "Hilbert-space dimension")->capture_default_str();
    verify->add_option("--seed", verify_args.seed, "Random seed");
    verify->add_option("--tolerance", verify_args.tolerance,
                       "Allowed negative residual (a negative value demands that much slack)");
    verify->add_option("--out", verify_args.out, "Write the report here instead of stdout");

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand("search", "Search for a cloning unitary and compare with the limit");
    search->add_option("--problem", search_args.problem, "Problem JSON file")->required();
    search->add_option("--budget", search_args.budget, "Objective evaluations")->capture_default_str();
    search->add_option("--env-dim", search_args.env_dim, "Environment dimension (default: ancilla's, else d^N)");
    search->add_option("--ansatz", search_args.ansatz, "full or ab-pure")
        ->check(CLI::IsMember({"full", "ab-pure"}))
        ->capture_default_str();
    search->add_option("--seed", search_args.seed, "Random seed");
    search->add_option("--out", search_args.out, "Write the report here instead of stdout");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Tabulate the limit along one parameter as CSV");
    sweep->add_option("--problem", sweep_args.problem, "Problem JSON file")->required();
    sweep->add_option("--param", sweep_args.param, "ancilla-fidelity, prior or L")
        ->required()
        ->check(CLI::IsMember({"ancilla-fidelity", "prior", "L"}));
    sweep->add_option("--from", sweep_args.from, "First parameter value");
    sweep->add_option("--to", sweep_args.to, "Last parameter value");
    sweep->add_option("--steps", sweep_args.steps, "Number of samples");
    sweep->add_option("--out", sweep_args.out, "Write the CSV here instead of stdout");

    LemmaArgs lemma_args;
    CLI::App* lemma = app.add_subcommand("lemma", "Two-angle maximization behind the two-state limit");
    lemma->add_option("--p", lemma_args.p, "Weight p in [0, 1] (q = 1 - p)")->required();
    lemma->add_option("--a", lemma_args.a, "Angle a in [0, pi/2] radians")->required();
    lemma->add_option("--grid-check", lemma_args.grid_step, "Also report a grid maximum with this step");
    lemma->add_option("--out", lemma_args.out, "Write the report here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (bound->parsed()) {
            return cmd_bound(bound_args, out);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_args, out, err);
        }
        if (search->parsed()) {
            return cmd_search(search_args, out, err);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_args, out);
        }
        return cmd_lemma(lemma_args, out);
    } catch (const ModeMismatch& e) {
        err << "mode mismatch: " << e.what() << "\n";
        return kExitModeMismatch;
    } catch (const ProblemError& e) {
        err << "problem file: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace clonebound::cli
