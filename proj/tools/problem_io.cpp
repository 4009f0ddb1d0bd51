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

#include "problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "clonebound/cloner.hpp"
#include "clonebound/errors.hpp"

namespace clonebound::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ProblemError(path + ": " + message);
}

const Json& require(const Json& doc, const char* key, const std::string& path) {
    if (!doc.is_object() || !doc.contains(key)) {
        fail(path.empty() ? key : path + "." + key, "missing required field");
    }
    return doc.at(key);
}

int require_int(const Json& doc, const char* key, int min_value) {
    const Json& v = require(doc, key, "");
    if (!v.is_number_integer() || v.get<long long>() < min_value) {
        std::ostringstream os;
        os << "expected an integer >= " << min_value;
        fail(key, os.str());
    }
    return v.get<int>();
}

std::vector<DensityMatrix> states_from_json(const Json& list, const std::string& path, std::size_t dim) {
    if (!list.is_array() || list.empty()) {
        fail(path, "expected a non-empty array of matrices");
    }
    std::vector<DensityMatrix> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = path + "[" + std::to_string(i) + "]";
        const ComplexMatrix m = matrix_from_json(list[i], at);
        if (static_cast<std::size_t>(m.rows()) != dim) {
            std::ostringstream os;
            os << "expected a " << dim << "x" << dim << " matrix, got " << m.rows() << "x" << m.cols();
            fail(at, os.str());
        }
        try {
            out.push_back(DensityMatrix::validate(m));
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }
    return out;
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& value, const std::string& path) {
    if (!value.is_array() || value.empty()) {
        fail(path, "expected a non-empty array of rows");
    }
    const std::size_t rows = value.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = value[r];
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.empty()) {
            fail(row_path, "expected a non-empty array of [re, im] pairs");
        }
        if (r == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            fail(row_path, "row length differs from row 0");
        }
    }
    if (rows != cols) {
        std::ostringstream os;
        os << "matrix must be square, got " << rows << "x" << cols;
        fail(path, os.str());
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Json& entry = value[r][c];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
                fail(path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]", "expected [re, im] pair");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CloningProblem problem_from_json(const Json& doc) {
    if (!doc.is_object()) {
        fail("$", "expected a JSON object");
    }
    const int dim = require_int(doc, "dim", 2);
    const int copies_in = require_int(doc, "N", 1);
    const int copies_out = require_int(doc, "L", 1);
    if (copies_out <= copies_in) {
        fail("L", "must exceed N");
    }
    const auto input_states = states_from_json(require(doc, "states", ""), "states", static_cast<std::size_t>(dim));

    const Json& priors_json = require(doc, "priors", "");
    if (!priors_json.is_array() || priors_json.size() != input_states.size()) {
        fail("priors", "expected one prior per state");
    }
    std::vector<double> priors;
    for (std::size_t i = 0; i < priors_json.size(); ++i) {
        if (!priors_json[i].is_number()) {
            fail("priors[" + std::to_string(i) + "]", "expected a number");
        }
        priors.push_back(priors_json[i].get<double>());
    }

    std::optional<Ensemble> ancilla;
    if (doc.contains("ancilla") && !doc.at("ancilla").is_null()) {
        const Json& anc = doc.at("ancilla");
        const Json& env_json = require(anc, "env_dim", "ancilla");
        if (!env_json.is_number_integer() || env_json.get<long long>() < 1) {
            fail("ancilla.env_dim", "expected an integer >= 1");
        }
        std::size_t extra = 1;
        for (int i = 0; i < copies_out - copies_in; ++i) {
            extra *= static_cast<std::size_t>(dim);
        }
        const std::size_t anc_dim = extra * env_json.get<std::size_t>();
        auto anc_states = states_from_json(require(anc, "states", "ancilla"), "ancilla.states", anc_dim);
        if (anc_states.size() != input_states.size()) {
            fail("ancilla.states", "expected one ancilla state per input state");
        }
        ancilla = Ensemble::uniform(std::move(anc_states));
    }

    try {
        return CloningProblem(Ensemble(input_states, std::move(priors)), std::move(ancilla), copies_in, copies_out);
    } catch (const Error& e) {
        fail(e.kind() == ErrorKind::InvalidPriors ? "priors" : "$", e.what());
    }
}

CloningProblem load_problem(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        throw ProblemError(file + ": cannot open problem file");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ProblemError(file + ": invalid JSON: " + e.what());
    }
    return problem_from_json(doc);
}

Json problem_to_json(const CloningProblem& problem) {
    Json doc;
    doc["dim"] = problem.dim();
    doc["N"] = problem.copies_in();
    doc["L"] = problem.copies_out();
    Json states = Json::array();
    for (const auto& s : problem.input().states()) {
        states.push_back(matrix_to_json(s.matrix()));
    }
    doc["states"] = std::move(states);
    doc["priors"] = problem.input().priors();
    if (problem.ancilla()) {
        Json anc;
        anc["env_dim"] = ancilla_env_dim(problem).value_or(1);
        Json anc_states = Json::array();
        for (const auto& s : problem.ancilla()->states()) {
            anc_states.push_back(matrix_to_json(s.matrix()));
        }
        anc["states"] = std::move(anc_states);
        doc["ancilla"] = std::move(anc);
    }
    return doc;
}

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) {
        return value;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

}  // namespace clonebound::cli
