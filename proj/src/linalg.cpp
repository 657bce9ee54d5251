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

#include <cmath>
#include <string>

#include "qcompare/linalg.hpp"

namespace qcompare {

namespace {

// Removes the components of v along the orthonormal set, twice for
// numerical orthogonality.
void project_out(StateVector &v, const std::vector<StateVector> &basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const StateVector &b : basis) {
            v -= inner(b, v) * b;
        }
    }
}

} // namespace

std::vector<StateVector> orthonormal_basis(const std::vector<StateVector> &vectors, double rank_tol) {
    std::vector<StateVector> basis;
    for (const StateVector &v : vectors) {
        const double original = v.norm();
        if (original == 0.0) {
            continue;
        }
        StateVector r = v;
        project_out(r, basis);
        const double residual = r.norm();
        if (residual > rank_tol * original && residual > 0.0) {
            basis.push_back(r.normalized());
        }
    }
    return basis;
}

std::vector<StateVector> complete_basis(std::vector<StateVector> basis, const std::vector<StateVector> &candidates) {
    if (basis.empty() && candidates.empty()) {
        throw DimensionError("complete_basis needs at least one vector to fix the dimension");
    }
    const std::size_t n = basis.empty() ? candidates.front().size() : basis.front().size();
    const Dims dims = basis.empty() ? candidates.front().dims() : basis.front().dims();
    auto try_add = [&](const StateVector &cand) {
        if (basis.size() == n) {
            return;
        }
        StateVector r = cand;
        project_out(r, basis);
        // Threshold well above rounding so that a nearly dependent
        // candidate never enters the basis.
        if (r.norm() > 1e-6) {
            basis.push_back(r.normalized());
        }
    };
    for (const StateVector &c : candidates) {
        try_add(c.reshaped(dims));
    }
    for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
        try_add(StateVector::basis(n, i).reshaped(dims));
    }
    if (basis.size() != n) {
        throw Error("complete_basis: failed to span the space");
    }
    return basis;
}

Operator from_columns(const std::vector<StateVector> &columns) {
    const std::size_t n = columns.size();
    Operator op(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (columns[c].size() != n) {
            throw DimensionError("from_columns needs n columns of length n");
        }
        for (std::size_t r = 0; r < n; ++r) {
            op(r, c) = columns[c][r];
        }
    }
    return op;
}

Operator isometry_completion(const std::vector<StateVector> &inputs, const std::vector<StateVector> &outputs,
                             const std::vector<StateVector> &output_candidates) {
    if (inputs.size() != outputs.size()) {
        throw DimensionError("isometry_completion: " + std::to_string(inputs.size()) + " inputs vs " +
                             std::to_string(outputs.size()) + " outputs");
    }
    const auto in_full = complete_basis(inputs);
    const auto out_full = complete_basis(outputs, output_candidates);
    return from_columns(out_full) * from_columns(in_full).adjoint();
}

Operator reorthonormalize(const Operator &u) {
    std::vector<StateVector> cols;
    for (std::size_t c = 0; c < u.dim(); ++c) {
        cols.emplace_back(u.column(c));
    }
    auto q = orthonormal_basis(cols, 0.0);
    if (q.size() != u.dim()) {
        throw NotUnitaryError("reorthonormalize: columns are linearly dependent");
    }
    return from_columns(q);
}

} // namespace qcompare
