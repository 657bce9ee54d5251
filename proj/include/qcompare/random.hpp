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
 * Seeded random sources and Haar-distributed states and unitaries.
 *
 * Every random quantity is a deterministic function of an explicit seed;
 * nothing here holds global state.
 */
#pragma once

#include <cstdint>
#include <random>

#include "qcompare/core.hpp"

namespace qcompare {

/// Independent child seed for stream `stream` of root seed `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    /// Uniform on [0, 1).
    double uniform() { return uniform_(engine_); }
    /// Standard complex Gaussian, E|z|^2 = 1.
    cplx complex_normal();
    std::mt19937_64 &engine() noexcept { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Normalized complex Gaussian vector.
StateVector haar_state(std::size_t dim, Rng &rng);
StateVector haar_state(std::size_t dim, std::uint64_t seed);

/// QR of a complex Ginibre matrix with the phases of diag(R) divided out.
Operator haar_unitary(std::size_t dim, Rng &rng);
Operator haar_unitary(std::size_t dim, std::uint64_t seed);

} // namespace qcompare
