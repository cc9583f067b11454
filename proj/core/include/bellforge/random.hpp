// Copyright 2026 The BellForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <random>

#include "bellforge/states.hpp"
#include "bellforge/types.hpp"

namespace bellforge {

using Rng = std::mt19937_64;

/// Haar-distributed n x n unitary (QR of a complex Ginibre matrix with the
/// diagonal phases of R removed).
Matrix haar_unitary(int n, Rng& rng);

/// Uniformly random unit vector in C^16.
FourQubitState random_four_qubit_state(Rng& rng);

/// Haar-random single-qubit unitary.
Matrix2 haar_unitary2(Rng& rng);

}  // namespace bellforge
