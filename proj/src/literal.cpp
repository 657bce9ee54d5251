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

#include <string>

#include "qcompare/literal.hpp"

namespace qcompare {

namespace {

cplx complex_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("expected a complex number as [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json parse_json(std::string_view text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("malformed literal: ") + e.what());
    }
}

} // namespace

nlohmann::json to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

StateVector state_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("a state literal is a non-empty list of [re, im] pairs");
    }
    std::vector<cplx> amps;
    amps.reserve(j.size());
    for (const auto &entry : j) {
        amps.push_back(complex_from_json(entry));
    }
    return StateVector(std::move(amps));
}

StateVector parse_state_literal(std::string_view text) { return state_from_json(parse_json(text)); }

nlohmann::json to_json(const StateVector &s) {
    nlohmann::json out = nlohmann::json::array();
    for (const cplx &a : s.amplitudes()) {
        out.push_back(to_json(a));
    }
    return out;
}

Operator operator_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("a matrix literal is a non-empty list of rows");
    }
    std::vector<std::vector<cplx>> rows;
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != j.size()) {
            throw ParseError("matrix literal must be square");
        }
        auto &out = rows.emplace_back();
        for (const auto &entry : row) {
            out.push_back(complex_from_json(entry));
        }
    }
    return Operator::from_rows(rows);
}

Operator parse_matrix_literal(std::string_view text) { return operator_from_json(parse_json(text)); }

nlohmann::json to_json(const Operator &op) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t r = 0; r < op.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (const cplx &e : op.row(r)) {
            row.push_back(to_json(e));
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace qcompare
