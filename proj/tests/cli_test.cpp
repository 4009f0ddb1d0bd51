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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

#include "clonebound/fidelity.hpp"
#include "problem_io.hpp"
#include "test_util.hpp"

using namespace clonebound;
using clonebound::testing::kPi;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;

    nlohmann::json json() const {
        return nlohmann::json::parse(out);
    }
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) {
    return std::string(CLONEBOUND_TEST_DATA_DIR) + "/" + name;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

/// Sets an environment variable for the lifetime of the object.
class ScopedEnv {
  public:
    ScopedEnv(const char* name, const char* value) : name_(name) {
        if (const char* old = std::getenv(name)) {
            old_ = old;
        }
        if (value != nullptr) {
            setenv(name, value, 1);
        } else {
            unsetenv(name);
        }
    }
    ~ScopedEnv() {
        if (old_) {
            setenv(name_, old_->c_str(), 1);
        } else {
            unsetenv(name_);
        }
    }

  private:
    const char* name_;
    std::optional<std::string> old_;
};

}  // namespace

TEST(cli, bound_pure_pair) {
    const CliRun r = run_cli({"bound", "--problem", data("pure_overlap_pi8.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = r.json();
    ASSERT_EQ(doc["schema"], 1);
    ASSERT_EQ(doc["command"], "bound");
    ASSERT_EQ(doc["mode"], "theorem1");
    ASSERT_EQ(doc["regime"], "restricted");
    const double c = std::cos(kPi / 8);
    ASSERT_NEAR(doc["bound"].get<double>(), clonebound::testing::pure_pair_clone_fidelity(c), 1e-12);
}

TEST(cli, bound_special_problems) {
    CliRun r = run_cli({"bound", "--problem", data("orthogonal.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    ASSERT_NEAR(r.json()["bound"].get<double>(), 1.0, 1e-12);

    r = run_cli({"bound", "--problem", data("saturated.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    ASSERT_EQ(r.json()["regime"], "saturated");
    ASSERT_EQ(r.json()["bound"].get<double>(), 1.0);

    r = run_cli({"bound", "--problem", data("three_equal.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = r.json();
    ASSERT_EQ(doc["mode"], "theorem2");
    ASSERT_EQ(doc["pairs"].size(), 3u);
    ASSERT_LT(std::abs(doc["cross_check"]["difference"].get<double>()), 1e-12);

    r = run_cli({"bound", "--problem", data("three_equal.json"), "--mode", "refined"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    ASSERT_LE(r.json()["bound"].get<double>(), r.json()["pairwise_bound"].get<double>() + 1e-9);
}

TEST(cli, exit_input_errors) {
    CliRun r = run_cli({"bound", "--problem", data("bad_trace.json")});
    ASSERT_EQ(r.code, cli::kExitInputError);
    ASSERT_NE(r.err.find("TraceNotOne"), std::string::npos) << r.err;
    ASSERT_NE(r.err.find("states[0]"), std::string::npos) << r.err;

    r = run_cli({"bound", "--problem", data("bad_priors.json")});
    ASSERT_EQ(r.code, cli::kExitInputError);
    ASSERT_NE(r.err.find("priors"), std::string::npos) << r.err;

    r = run_cli({"bound", "--problem", data("missing_L.json")});
    ASSERT_EQ(r.code, cli::kExitInputError);
    ASSERT_NE(r.err.find("L"), std::string::npos) << r.err;

    ASSERT_EQ(run_cli({"bound", "--problem", data("no_such_file.json")}).code, cli::kExitInputError);
    ASSERT_EQ(run_cli({"bound"}).code, cli::kExitInputError);
    ASSERT_EQ(run_cli({"bound", "--problem", data("orthogonal.json"), "--mode", "other"}).code,
              cli::kExitInputError);
    ASSERT_EQ(run_cli({"frobnicate"}).code, cli::kExitInputError);
    ASSERT_EQ(run_cli({"lemma", "--p", "1.3", "--a", "0.4"}).code, cli::kExitInputError);
    ASSERT_EQ(run_cli({"lemma", "--p", "0.5", "--a", "2.0"}).code, cli::kExitInputError);
    ASSERT_EQ(run_cli({"verify", "--suite", "triangle", "--dim", "9"}).code, cli::kExitInputError);
    ASSERT_EQ(run_cli({"sweep", "--problem", data("three_equal.json"), "--param", "ancilla-fidelity"}).code,
              cli::kExitInputError);
}

TEST(cli, exit_mode_mismatch) {
    CliRun r = run_cli({"bound", "--problem", data("three_equal.json"), "--mode", "theorem1"});
    ASSERT_EQ(r.code, cli::kExitModeMismatch);
    ASSERT_FALSE(r.err.empty());
    ASSERT_EQ(run_cli({"bound", "--problem", data("pure_overlap_pi8.json"), "--mode", "theorem2"}).code,
              cli::kExitModeMismatch);
    ASSERT_EQ(run_cli({"bound", "--problem", data("three_equal.json"), "--mode", "asymptotic"}).code,
              cli::kExitModeMismatch);
}

TEST(cli, exit_violation_serializes_counterexamples) {
    // Demanding 0.99 of slack from the triangle inequality fails on random triples.
    const CliRun r = run_cli({"verify", "--suite", "triangle", "--trials", "20", "--seed", "3", "--tolerance", "-0.99"});
    ASSERT_EQ(r.code, cli::kExitViolation);
    const auto doc = r.json();
    ASSERT_GT(doc["violations"].get<int>(), 0);
    const auto& ce = doc["counterexamples"][0];
    for (const char* key : {"trial", "residual", "chi", "omega", "rho"}) {
        ASSERT_TRUE(ce.contains(key)) << key;
    }
    // The serialized states reproduce the residual.
    const auto state = [&](const char* key) {
        return DensityMatrix::validate(cli::matrix_from_json(ce[key], key));
    };
    ASSERT_NEAR(check_triangle(state("chi"), state("omega"), state("rho")), ce["residual"].get<double>(), 1e-9);
}

TEST(cli, verify_suites) {
    CliRun r = run_cli({"verify", "--suite", "triangle", "--trials", "0"});
    ASSERT_EQ(r.code, cli::kExitOk);
    ASSERT_TRUE(r.json()["min_residual"].is_null());
    ASSERT_EQ(r.json()["violations"], 0);

    for (const char* suite : {"triangle", "monotonicity", "multiplicativity", "measurement", "bound-sweep"}) {
        r = run_cli({"verify", "--suite", suite, "--trials", "50", "--seed", "7"});
        ASSERT_EQ(r.code, cli::kExitOk) << suite << "\n" << r.out;
        ASSERT_FALSE(r.json()["min_residual"].is_null());
    }
    ASSERT_EQ(run_cli({"verify", "--suite", "bound-sweep", "--trials", "5", "--tolerance", "0.1"}).code,
              cli::kExitInputError);
}

TEST(cli, search_reports_gap) {
    const CliRun r = run_cli({"search", "--problem", data("pure_overlap_pi8.json"), "--budget", "3000", "--seed", "2"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = r.json();
    ASSERT_EQ(doc["env_dim"], 2);
    ASSERT_EQ(doc["env_dim_source"], "default d^N (engineering choice)");
    ASSERT_LE(doc["evaluations"].get<int>(), 3000);
    ASSERT_GE(doc["gap"].get<double>(), -1e-6);
    ASSERT_NEAR(doc["gap"].get<double>(), doc["bound"].get<double>() - doc["achieved_fidelity"].get<double>(), 1e-15);
    const ComplexMatrix u = cli::matrix_from_json(doc["unitary"], "unitary");
    ASSERT_EQ(u.rows(), 8);
    ASSERT_LT(unitarity_residual(u), 1e-8);

    const CliRun ab = run_cli({"search", "--problem", data("pure_overlap_pi8.json"), "--budget", "500", "--ansatz",
                            "ab-pure"});
    ASSERT_EQ(ab.code, cli::kExitOk) << ab.err;
    ASSERT_EQ(ab.json()["env_dim"], 1);
}

TEST(cli, deterministic_output) {
    const std::vector<std::vector<std::string>> commands{
        {"search", "--problem", data("mixed_qubits.json"), "--budget", "800", "--seed", "4"},
        {"bound", "--problem", data("three_equal.json"), "--mode", "refined"},
        {"verify", "--suite", "bound-sweep", "--trials", "20"},
        {"sweep", "--problem", data("mixed_qubits.json"), "--param", "prior", "--steps", "9"},
    };
    for (const auto& args : commands) {
        const CliRun a = run_cli(args);
        const CliRun b = run_cli(args);
        ASSERT_EQ(a.code, cli::kExitOk) << a.err;
        ASSERT_EQ(a.out, b.out);
    }
}

TEST(cli, seed_resolution) {
    const std::vector<std::string> base{"verify", "--suite", "triangle", "--trials", "3"};
    {
        ScopedEnv env("CLONEBOUND_SEED", nullptr);
        ASSERT_EQ(run_cli(base).json()["seed"], 1);
    }
    {
        ScopedEnv env("CLONEBOUND_SEED", "42");
        const CliRun from_env = run_cli(base);
        ASSERT_EQ(from_env.json()["seed"], 42);
        auto with_flag = base;
        with_flag.insert(with_flag.end(), {"--seed", "42"});
        ASSERT_EQ(run_cli(with_flag).out, from_env.out);
        with_flag.back() = "5";
        ASSERT_EQ(run_cli(with_flag).json()["seed"], 5);
    }
    {
        ScopedEnv env("CLONEBOUND_SEED", "abc");
        ASSERT_EQ(run_cli(base).code, cli::kExitInputError);
    }
}

TEST(cli, report_round_trip) {
    const std::string file = data("mixed_qubits.json");
    const CliRun r = run_cli({"bound", "--problem", file});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = r.json();
    const CloningProblem problem = cli::load_problem(file);
    const auto& pair = doc["pairs"][0];
    const DensityMatrix& a = problem.input().state(0);
    const DensityMatrix& b = problem.input().state(1);
    const auto check = [&](const char* fid_key, const char* angle_key, double fid) {
        ASSERT_NEAR(pair[fid_key].get<double>(), fid, 1e-12) << fid_key;
        ASSERT_NEAR(pair[angle_key].get<double>(), std::acos(std::sqrt(fid)), 1e-9) << angle_key;
    };
    check("fidelity_N", "delta_N", fidelity(a, b));
    check("fidelity_M", "delta_M", fidelity(a, b));
    check("fidelity_L", "delta_L", fidelity(a.tensor_power(2), b.tensor_power(2)));
    ASSERT_EQ(doc["problem"]["L"], 2);

    // Problem serialization round trip.
    const CloningProblem back = cli::problem_from_json(cli::problem_to_json(problem));
    ASSERT_EQ(back.input().state(1).matrix(), b.matrix());
    ASSERT_EQ(back.input().prior(0), problem.input().prior(0));
}

TEST(cli, csv_round_trip) {
    const std::string file = data("three_equal.json");
    const CliRun js = run_cli({"bound", "--problem", file});
    const CliRun csv = run_cli({"bound", "--problem", file, "--format", "csv"});
    ASSERT_EQ(csv.code, cli::kExitOk) << csv.err;
    const auto rows = csv_rows(csv.out);
    ASSERT_EQ(rows.size(), 5u);
    ASSERT_EQ(rows[0][0], "record");
    ASSERT_EQ(rows[0].size(), 9u);
    const auto doc = js.json();
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& row = rows[i + 1];
        ASSERT_EQ(row[0], "pair");
        ASSERT_EQ(std::stoi(row[1]), doc["pairs"][i]["j"].get<int>());
        ASSERT_EQ(std::stoi(row[2]), doc["pairs"][i]["k"].get<int>());
        ASSERT_NEAR(std::stod(row[7]), doc["pairs"][i]["delta_L"].get<double>(), 1e-11);
    }
    ASSERT_EQ(rows[4][0], "bound");
    ASSERT_EQ(std::stod(rows[4][4]), doc["bound"].get<double>());
}

TEST(cli, sweeps) {
    CliRun r = run_cli({"sweep", "--problem", data("pure_overlap_pi8.json"), "--param", "L", "--to", "6"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows[0], (std::vector<std::string>{"param", "bound", "regime"}));
    ASSERT_EQ(rows.size(), 8u);
    ASSERT_EQ(rows[6][0], "summary");
    ASSERT_EQ(rows[6][2], "pass");
    ASSERT_EQ(rows[7][0], "asymptotic");
    // Pure states: the limit tends to the optimal discrimination probability.
    const double c = std::cos(kPi / 8);
    ASSERT_NEAR(std::stod(rows[7][1]), clonebound::testing::helstrom_success(0.5, 0.5, c), 1e-12);

    r = run_cli({"sweep", "--problem", data("mixed_qubits.json"), "--param", "prior"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 101u);
    ASSERT_EQ(rows.back()[0], "summary");
    ASSERT_EQ(rows.back()[2], "pass");
    // Symmetric states: the table is symmetric under p -> 1 - p.
    ASSERT_NEAR(std::stod(rows[1][1]), std::stod(rows[99][1]), 1e-12);

    r = run_cli({"sweep", "--problem", data("mixed_qubits.json"), "--param", "ancilla-fidelity", "--steps", "11"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 13u);
    ASSERT_EQ(rows.back()[2], "pass");
    ASSERT_NEAR(std::stod(rows[11][0]), 1.0, 1e-15);
    ASSERT_NEAR(std::stod(rows[1][1]), 1.0, 1e-9);
}

TEST(cli, lemma) {
    CliRun r = run_cli({"lemma", "--p", "0.5", "--a", "0.4", "--grid-check", "1e-3"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    auto doc = r.json();
    ASSERT_NEAR(doc["fmax"].get<double>(), std::pow(std::cos(0.2), 2), 1e-14);
    ASSERT_NEAR(doc["argmax"]["x"].get<double>(), 0.2, 1e-12);
    ASSERT_LT(std::abs(doc["grid"]["difference"].get<double>()), 1e-6);

    r = run_cli({"lemma", "--p", "0.8", "--a", "0.9", "--grid-check", "1e-4"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    doc = r.json();
    ASSERT_NEAR(doc["grid"]["max"].get<double>(), clonebound::testing::lemma_grid_oracle(0.8, 0.2, 0.9, 1e-4), 1e-12);
    ASSERT_LT(doc["stationarity_residual"].get<double>(), 1e-10);
}

TEST(cli, out_file_and_help) {
    const auto path = std::filesystem::temp_directory_path() / "clonebound_cli_test.json";
    std::filesystem::remove(path);
    const CliRun r = run_cli({"lemma", "--p", "0.3", "--a", "0.1", "--out", path.string()});
    ASSERT_EQ(r.code, cli::kExitOk);
    ASSERT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    ASSERT_EQ(doc["command"], "lemma");
    std::filesystem::remove(path);

    ASSERT_EQ(run_cli({"--help"}).code, cli::kExitOk);
    ASSERT_EQ(run_cli({"--version"}).code, cli::kExitOk);
}
