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

#include "clonebound/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace clonebound {

NelderMeadResult nelder_mead_minimize(const Objective& f,
                                      std::vector<double> x0,
                                      const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    if (n == 0 || options.max_evaluations == 0) {
        result.x = std::move(x0);
        if (options.max_evaluations > 0) {
            result.value = f(result.x);
            result.evaluations = 1;
        }
        result.converged = n == 0;
        return result;
    }

    const double dn = static_cast<double>(n);
    const double reflect = 1.0;
    const double expand = options.adaptive ? 1.0 + 2.0 / dn : 2.0;
    const double contract = options.adaptive ? 0.75 - 1.0 / (2.0 * dn) : 0.5;
    const double shrink = options.adaptive ? 1.0 - 1.0 / dn : 0.5;

    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    values[0] = eval(simplex[0]);
    for (std::size_t i = 0; i < n && evals < options.max_evaluations; ++i) {
        simplex[i + 1][i] += options.initial_step;
        values[i + 1] = eval(simplex[i + 1]);
    }
    if (evals < n + 1) {
        // Budget ran out while building the simplex.
        const auto best = static_cast<std::size_t>(
            std::min_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(evals)) - values.begin());
        result.x = simplex[best];
        result.value = values[best];
        result.evaluations = evals;
        return result;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto along = [&](const std::vector<double>& worst, double coef, std::vector<double>& out) {
        for (std::size_t d = 0; d < n; ++d) {
            out[d] = centroid[d] + coef * (centroid[d] - worst[d]);
        }
    };

    bool converged = false;
    while (evals < options.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d) {
                diameter = std::max(diameter, std::abs(simplex[i][d] - simplex[best][d]));
            }
        }
        if (values[worst] - values[best] <= options.f_tol && diameter <= options.x_tol) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) {
                continue;
            }
            for (std::size_t d = 0; d < n; ++d) {
                centroid[d] += simplex[i][d];
            }
        }
        for (double& c : centroid) {
            c /= dn;
        }

        along(simplex[worst], reflect, trial);
        const double f_reflect = eval(trial);
        if (f_reflect < values[best]) {
            if (evals >= options.max_evaluations) {
                simplex[worst] = trial;
                values[worst] = f_reflect;
                break;
            }
            along(simplex[worst], reflect * expand, trial2);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        if (evals >= options.max_evaluations) {
            break;
        }
        // Outside contraction when the reflection improved on the worst, inside otherwise.
        const bool outside = f_reflect < values[worst];
        along(simplex[worst], outside ? reflect * contract : -contract, trial2);
        const double f_contract = eval(trial2);
        if (f_contract < std::min(f_reflect, values[worst])) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }
        for (std::size_t i = 0; i <= n && evals < options.max_evaluations; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t d = 0; d < n; ++d) {
                simplex[i][d] = simplex[best][d] + shrink * (simplex[i][d] - simplex[best][d]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

}  // namespace clonebound
