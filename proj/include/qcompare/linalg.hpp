// Copyright 2026 The qcompare Authors
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

#include <vector>

#include "qcompare/core.hpp"

namespace qcompare {

/// Modified Gram-Schmidt (two passes). Vectors whose residual norm falls
/// below rank_tol times their original norm are dropped.
std::vector<StateVector> orthonormal_basis(const std::vector<StateVector> &vectors, double rank_tol = 1e-8);

/// Extends an orthonormal set to a full basis of its space, drawing new
/// directions from `candidates` in order and then from the standard basis.
std::vector<StateVector> complete_basis(std::vector<StateVector> basis,
                                        const std::vector<StateVector> &candidates = {});

/// Operator whose c-th column is columns[c].
Operator from_columns(const std::vector<StateVector> &columns);

/// Unitary mapping inputs[k] -> outputs[k] for two orthonormal lists of the
/// same length; both lists are completed (with the given candidates for the
/// output side) and the completions are paired in order.
Operator isometry_completion(const std::vector<StateVector> &inputs, const std::vector<StateVector> &outputs,
                             const std::vector<StateVector> &output_candidates = {});

/// Nearest unitary in the column sense (Gram-Schmidt of the columns).
Operator reorthonormalize(const Operator &u);

} // namespace qcompare
