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

#include <array>
#include <cmath>
#include <numbers>

#include "qcompare/linalg.hpp"
#include "qcompare/random.hpp"

namespace qcompare {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * (1.0 / std::numbers::sqrt2), im * (1.0 / std::numbers::sqrt2)};
}

StateVector haar_state(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw DimensionError("haar_state needs dim >= 1");
    }
    std::vector<cplx> amps(dim);
    for (cplx &a : amps) {
        a = rng.complex_normal();
    }
    return StateVector(std::move(amps)).normalized();
}

StateVector haar_state(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_state(dim, rng);
}

Operator haar_unitary(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw DimensionError("haar_unitary needs dim >= 1");
    }
    std::vector<StateVector> columns;
    columns.reserve(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        std::vector<cplx> col(dim);
        for (cplx &a : col) {
            a = rng.complex_normal();
        }
        columns.emplace_back(std::move(col));
    }
    // Gram-Schmidt leaves diag(R) real and positive, which is exactly the
    // phase convention that makes Q Haar distributed.
    auto q = orthonormal_basis(columns, 0.0);
    if (q.size() != dim) {
        throw Error("haar_unitary: degenerate Gaussian sample");
    }
    return from_columns(q);
}

Operator haar_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(dim, rng);
}

} // namespace qcompare
