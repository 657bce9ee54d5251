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

// Helpers shared by the test binaries.
#pragma once

#include <cmath>

#include "qcompare/core.hpp"
#include "qcompare/random.hpp"

namespace qcompare::testing {

// Ginibre linear part, redrawn until |det A| >= min_det.
inline AntiLinearMap random_antilinear(Rng &rng, double min_det = 0.1) {
    for (;;) {
        Operator a(2);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                a(r, c) = rng.complex_normal();
            }
        }
        if (std::abs(a.determinant()) >= min_det) {
            return AntiLinearMap(std::move(a));
        }
    }
}

inline double log_uniform(Rng &rng, double lo, double hi) {
    return std::exp(std::log(lo) + rng.uniform() * (std::log(hi) - std::log(lo)));
}

} // namespace qcompare::testing
