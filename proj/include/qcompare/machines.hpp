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
 * Decision machines: a unitary on probe (x) target (x) ancilla whose answer
 * is read from one qubit factor, |0> = YES and |1> = NO.
 */
#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "qcompare/core.hpp"
#include "qcompare/random.hpp"

namespace qcompare {

class DecisionMachine {
  public:
    /// Register order is probe, target, then ancilla factors; output_qubit
    /// indexes that list. Default ancilla_init is the all-zeros basis state.
    DecisionMachine(Operator unitary, std::size_t probe_dim, std::size_t target_dim, Dims ancilla_dims,
                    std::size_t output_qubit, std::optional<StateVector> ancilla_init = std::nullopt);

    const Operator &unitary() const noexcept { return unitary_; }
    std::size_t probe_dim() const noexcept { return probe_dim_; }
    std::size_t target_dim() const noexcept { return target_dim_; }
    const Dims &ancilla_dims() const noexcept { return ancilla_dims_; }
    const StateVector &ancilla_init() const noexcept { return ancilla_init_; }
    std::size_t output_qubit() const noexcept { return output_qubit_; }

    /// Full register dims: probe, target, ancillas.
    Dims register_dims() const;
    /// probe_dim * target_dim
    std::size_t input_dim() const noexcept { return probe_dim_ * target_dim_; }

    /// input (x) ancilla_init, with the register factorization. `input` is a
    /// probe (x) target vector and may be unnormalized.
    StateVector prepare(const StateVector &input) const;
    /// Linear action on an (unnormalized) probe (x) target vector.
    StateVector run(const StateVector &input) const;

    /// Same machine with a different unitary.
    DecisionMachine with_unitary(Operator unitary) const;

  private:
    Operator unitary_;
    std::size_t probe_dim_;
    std::size_t target_dim_;
    Dims ancilla_dims_;
    std::size_t output_qubit_;
    StateVector ancilla_init_;
};

struct OutcomeDistribution {
    double p_yes = 0.0;
    double p_no = 0.0;
    std::optional<StateVector> post_yes;
    std::optional<StateVector> post_no;
};

/// The comparison map K: anti-linear, or linear (in the machines of this
/// library, unitary).
using KMap = std::variant<AntiLinearMap, Operator>;

StateVector apply_map(const KMap &k, const StateVector &s);
bool is_antilinear(const KMap &k) noexcept;
std::size_t map_dim(const KMap &k) noexcept;

/// (1 + |<phi|psi>|^2) / 2 in closed form.
double swap_test_probability(const StateVector &phi, const StateVector &psi);

/// H on the answer qubit, answer-controlled SWAP of probe and target, H again.
/// Register: probe, target, answer qubit (output factor 2).
DecisionMachine build_swap_test_machine(std::size_t state_dim);

/// SWAP test on (k phi, psi). Throws NotUnitaryError for non-unitary k.
DecisionMachine build_k_comparison_machine(const Operator &k);

/// Machine whose answer never depends on the input.
DecisionMachine build_constant_machine(bool answer_yes, std::size_t probe_dim, std::size_t target_dim,
                                       Dims ancilla_dims = {2});

OutcomeDistribution evaluate(const DecisionMachine &machine, const StateVector &phi, const StateVector &psi);

/// (phi, normalize(K phi)) for Haar phi.
std::pair<StateVector, StateVector> sample_matched_pair(const KMap &k, Rng &rng);

/// (phi, psi) with both Haar and |<normalize(K phi)|psi>| <= 0.999.
std::pair<StateVector, StateVector> sample_mismatched_pair(const KMap &k, Rng &rng);

/// Ray equality |<normalize(K phi)|psi>| >= 1 - 1e-10.
bool is_matched(const KMap &k, const StateVector &phi, const StateVector &psi);

inline constexpr double kMismatchRejectOverlap = 0.999;
inline constexpr double kMatchOverlapTol = 1e-10;
inline constexpr double kClassifyTol = 1e-9;

struct OneSidedness {
    double max_matched_p_no = 0.0;
    double max_matched_p_yes = 0.0;
    double max_mismatched_p_yes = 0.0;
    double max_mismatched_p_no = 0.0;
    bool yes_certain_on_match = false;
    bool no_certain_on_mismatch = false;

    /// "both", "yes-certain-on-match", "no-certain-on-mismatch" or "neither".
    std::string label() const;
};

OneSidedness classify_one_sidedness(const DecisionMachine &machine, const KMap &k, std::size_t n_samples,
                                    std::uint64_t seed, double tol = kClassifyTol);

nlohmann::json to_json(const DecisionMachine &machine);
DecisionMachine machine_from_json(const nlohmann::json &j);
nlohmann::json to_json(const OneSidedness &c);

} // namespace qcompare
