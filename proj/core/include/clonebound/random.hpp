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

// Random test objects: Haar unitaries, Ginibre-induced density matrices and
// POVM effects. Deterministic for a given engine state.

#include <cstddef>
#include <cstdint>
#include <random>

#include "clonebound/states.hpp"

namespace clonebound {

using Rng = std::mt19937_64;

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

/// Unit vector, uniformly distributed on the sphere.
ComplexVector random_state_vector(std::size_t dim, Rng& rng);

DensityMatrix random_pure_state(std::size_t dim, Rng& rng);

/// G G^dagger / Tr for a dim x rank Ginibre G; rank 0 means full rank.
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);

/// (I + H / ||H||_op) / 2 for random Hermitian H; spectrum inside [0, 1].
ComplexMatrix random_effect(std::size_t dim, Rng& rng);

}  // namespace clonebound
