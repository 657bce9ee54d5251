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

/**
 * @file
 * JSON literals for states and matrices.
 *
 * A state is a list of [re, im] pairs in computational-basis order, e.g.
 * [[0.7071,0],[0,0.7071]]. A matrix is a list of rows in the same format.
 */
#pragma once

#include <string_view>

#include <json.hpp>

#include "qcompare/core.hpp"

namespace qcompare {

StateVector state_from_json(const nlohmann::json &j);
StateVector parse_state_literal(std::string_view text);
nlohmann::json to_json(const StateVector &s);

Operator operator_from_json(const nlohmann::json &j);
Operator parse_matrix_literal(std::string_view text);
nlohmann::json to_json(const Operator &op);

nlohmann::json to_json(cplx z);

} // namespace qcompare
