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

// JSON problem files and report helpers for the command-line tool.
//
// Problem file:
//   { "dim": d, "N": n_in, "L": n_out,
//     "states": [matrix, ...], "priors": [p, ...],
//     "ancilla": { "env_dim": e, "states": [matrix, ...] } }      (optional)
// Each matrix is an array of rows, each row an array of [re, im] pairs.
// Input states are d x d; ancilla states are (d^(L-N) * e) square.

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "clonebound/states.hpp"

namespace clonebound::cli {

using Json = nlohmann::ordered_json;

/// Parse or validation failure, prefixed with the offending field path.
class ProblemError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ComplexMatrix matrix_from_json(const Json& value, const std::string& path);
Json matrix_to_json(const ComplexMatrix& m);

CloningProblem problem_from_json(const Json& doc);
CloningProblem load_problem(const std::string& file);
Json problem_to_json(const CloningProblem& problem);

/// Rounds to `digits` significant decimal digits.
double round_significant(double value, int digits);

}  // namespace clonebound::cli
