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
 * Cloning game scored with a SWAP test: the cloner passes a round when the
 * SWAP test between one of its clones and a fresh copy of the input says
 * YES. Payoff is +1 on a pass and -1 otherwise.
 */
#pragma once

#include <array>
#include <cstdint>

#include <json.hpp>

#include "qcompare/core.hpp"

namespace qcompare {

class Cloner {
  public:
    /// `dims` lists the register: factor 0 is the input, the rest are blanks
    /// and machine ancillas, prepared in `blank_init` (default all zeros).
    Cloner(Operator unitary, Dims dims, std::array<std::size_t, 2> clone_factors,
           std::optional<StateVector> blank_init = std::nullopt);

    const Operator &unitary() const noexcept { return unitary_; }
    const Dims &dims() const noexcept { return dims_; }
    const std::array<std::size_t, 2> &clone_factors() const noexcept { return clone_factors_; }
    const StateVector &blank_init() const noexcept { return blank_init_; }
    std::size_t input_dim() const noexcept { return dims_.front(); }

    /// U (psi (x) blank_init)
    StateVector run(const StateVector &psi) const;

  private:
    Operator unitary_;
    Dims dims_;
    std::array<std::size_t, 2> clone_factors_;
    StateVector blank_init_;
};

/// Symmetric universal 1 -> 2 qubit cloner on (input, blank, ancilla):
///   |0>|00> -> sqrt(2/3)|00>|0> + sqrt(1/6)(|01> + |10>)|1>
///   |1>|00> -> sqrt(2/3)|11>|1> + sqrt(1/6)(|01> + |10>)|0>
Cloner universal_cloner();

/// psi (x) |0>: clone 1 is the input itself, clone 2 the untouched blank.
Cloner trivial_cloner(std::size_t dim = 2);

struct GameResult {
    double p_pass = 0.0;
    double expected_payoff = 0.0;
    /// <psi| rho_clone |psi> from the reduced state of the chosen clone.
    double fidelity = 0.0;
};

/// clone_index is 1 or 2. The pass probability is read from amplitudes.
GameResult run_game(const Cloner &cloner, const StateVector &psi, int clone_index);

/// Mean payoff over n_rounds Bernoulli(p_pass) rounds.
double sample_game(const Cloner &cloner, const StateVector &psi, int clone_index, std::size_t n_rounds,
                   std::uint64_t seed);

nlohmann::json to_json(const GameResult &g);
nlohmann::json to_json(const Cloner &c);
Cloner cloner_from_json(const nlohmann::json &j);

} // namespace qcompare
