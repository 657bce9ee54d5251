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
 * Executable form of the impossibility argument for one-sided comparison
 * machines with an anti-linear, non-singular K on a qubit.
 *
 * Two cases are checked. Case 1: the machine never says YES on a mismatched
 * pair; then the YES amplitudes a00, a11 on the matched basis probes must
 * vanish. Case 2: the machine never says NO on a matched pair; then the NO
 * amplitudes b01, b10 on the mismatched basis probes must vanish. Each
 * check is quantitative: the relevant amplitudes are bounded by a constant
 * times the measured violation of the one-sided premise.
 *
 * Amplitudes are branch norms (not probabilities) throughout.
 */
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "qcompare/machines.hpp"

namespace qcompare {

struct BranchDecomposition {
    double yes_amplitude = 0.0;
    double no_amplitude = 0.0;
    /// Normalized branch states with the output qubit removed; absent when
    /// the amplitude is below 1e-7 (probability 1e-14).
    std::optional<StateVector> yes_vector;
    std::optional<StateVector> no_vector;
    /// Unnormalized projections on the full register (output qubit kept).
    StateVector yes_component;
    StateVector no_component;
};

/// Linear action of the machine on an arbitrary (possibly unnormalized)
/// probe (x) target vector, split on the output qubit.
BranchDecomposition extract_branches(const DecisionMachine &machine, const StateVector &input);

/// The proof's probe states for a qubit K, with phi_j = K|j>. Every probe is
/// kept exactly as written (unnormalized) and as a normalized copy.
struct ProbeSet {
    bool antilinear = true;
    StateVector phi0;
    StateVector phi1;

    struct Probe {
        StateVector raw;
        StateVector normalized;
    };
    /// |i> (x) phi_j at index 2*i + j.
    std::array<Probe, 4> basis;
    /// (|0> + |1>)/sqrt2 (x) phi_1, and the same with phi_0.
    Probe plus_phi1;
    Probe plus_phi0;
    /// (|0> + |1>)(phi_0 + phi_1) / 2
    Probe sum;
    /// (|0> + i|1>)(phi_0 - i phi_1) / 2 for anti-linear K. For a linear K
    /// the matched counterpart (|0> + i|1>)(phi_0 + i phi_1) / 2 is used.
    Probe twisted;

    /// Largest deviation in the identities K(|0>+|1>) = phi_0 + phi_1 and
    /// K(|0>+i|1>) = phi_0 -/+ i phi_1.
    double identity_residual = 0.0;

    const Probe &basis_probe(int i, int j) const { return basis[2 * i + j]; }
};

inline constexpr double kProbeIdentityTol = 1e-12;

/// Throws SingularMapError when |det| <= 1e-9 and DimensionError unless K
/// acts on a qubit.
ProbeSet build_probe_set(const KMap &k);

/// Inputs whose forbidden-branch amplitude defines the violation. Case 1:
/// the mismatched probes |0>phi1, |1>phi0, |+>phi1, |+>phi0; case 2: the
/// matched probes |0>phi0, |1>phi1, sum, twisted. Normalized.
std::vector<StateVector> constraint_probes(const ProbeSet &probes, int case_id);

/// Case 1: a_ii = sqrt2 * Y(|+>phi_i) - Y(|1-i>phi_i) gives a <= (1 + sqrt2) v.
double case1_bound_constant();
/// Case 2 solves the two superposition probes for the NO branches of the
/// mismatched basis probes; the constant depends on the probe norms and is
/// 2 + sqrt2 when K is anti-unitary.
double case2_bound_constant(const ProbeSet &probes);

/// Amplitude violation below which the one-sided premise counts as met.
inline constexpr double kPremiseTol = 1e-9;
inline constexpr double kVerdictSlack = 1e-10;

struct VerificationReport {
    int case_id = 1;
    bool antilinear = true;
    double violation = 0.0;
    /// {a00, a11} for case 1, {b01, b10} for case 2.
    std::map<std::string, double> amplitudes;
    double triviality_gap = 0.0;
    double bound_constant = 0.0;
    bool premise_met = false;
    bool verdict = false;
    /// |direct amplitude - amplitude recombined from the probe equations|.
    /// Absent when the probe equations do not determine the amplitude
    /// (case 2 with a linear K).
    std::optional<double> recombination_residual;
};

VerificationReport verify_case1(const DecisionMachine &machine, const KMap &k);
VerificationReport verify_case2(const DecisionMachine &machine, const KMap &k);
VerificationReport verify_case(const DecisionMachine &machine, const KMap &k, int case_id);

/// Case 1: max p_yes over sampled matched pairs. Case 2: max p_no over
/// sampled mismatched pairs. Zero for the corresponding constant machine.
double nontriviality(const DecisionMachine &machine, const KMap &k, int case_id, std::size_t n_samples,
                     std::uint64_t seed);

/// A machine satisfying the case's one-sided premise exactly on the
/// constraint probes: their span is mapped by a random isometry into the
/// forced output subspace (NO for case 1, YES for case 2) and the rest of
/// the unitary is filled in by seeded orthonormal completion. The first
/// ancilla is the output qubit.
DecisionMachine build_exactly_constrained_machine(const KMap &k, int case_id, const Dims &ancilla_dims,
                                                  std::uint64_t seed);

/// exp(i * eps * H) * U for a seeded GUE-like Hermitian H of unit
/// Frobenius norm.
DecisionMachine perturb_machine(const DecisionMachine &machine, double eps, std::uint64_t seed);

nlohmann::json to_json(const VerificationReport &r);

} // namespace qcompare
