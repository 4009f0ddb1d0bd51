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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace clonebound {

struct NelderMeadOptions {
    double initial_step = 0.1;
    /// Converged once the simplex value spread and its diameter both fall
    /// below these.
    double f_tol = 1e-12;
    double x_tol = 1e-10;
    std::size_t max_evaluations = 1000;
    /// Dimension-dependent coefficients (Gao & Han); plain 1/2/0.5/0.5 otherwise.
    bool adaptive = true;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization from `x0`.
NelderMeadResult nelder_mead_minimize(const Objective& f,
                                      std::vector<double> x0,
                                      const NelderMeadOptions& options = {});

}  // namespace clonebound
