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

#include <algorithm>
#include <cmath>
#include <string>

#include "qcompare/literal.hpp"
#include "qcompare/machines.hpp"

namespace qcompare {

DecisionMachine::DecisionMachine(Operator unitary, std::size_t probe_dim, std::size_t target_dim, Dims ancilla_dims,
                                 std::size_t output_qubit, std::optional<StateVector> ancilla_init)
    : unitary_(std::move(unitary)), probe_dim_(probe_dim), target_dim_(target_dim),
      ancilla_dims_(std::move(ancilla_dims)), output_qubit_(output_qubit) {
    const Dims dims = register_dims();
    if (probe_dim_ == 0 || target_dim_ == 0) {
        throw DimensionError("machine probe and target dimensions must be positive");
    }
    if (unitary_.dim() != dims_product(dims)) {
        throw DimensionError("machine unitary has dimension " + std::to_string(unitary_.dim()) +
                             ", register needs " + std::to_string(dims_product(dims)));
    }
    if (!unitary_.is_unitary()) {
        throw NotUnitaryError("machine unitary fails the unitarity check (error " +
                              std::to_string(unitary_.unitarity_error()) + ")");
    }
    if (output_qubit_ >= dims.size() || dims[output_qubit_] != 2) {
        throw DimensionError("output_qubit must address a qubit factor");
    }
    if (ancilla_init) {
        ancilla_init_ = ancilla_init->reshaped(ancilla_dims_);
    } else {
        ancilla_init_ = StateVector::basis(dims_product(ancilla_dims_), 0).reshaped(ancilla_dims_);
    }
    ancilla_init_.require_physical("ancilla_init");
}

Dims DecisionMachine::register_dims() const {
    Dims dims{probe_dim_, target_dim_};
    dims.insert(dims.end(), ancilla_dims_.begin(), ancilla_dims_.end());
    return dims;
}

StateVector DecisionMachine::prepare(const StateVector &input) const {
    if (input.size() != input_dim()) {
        throw DimensionError("machine input has dimension " + std::to_string(input.size()) + ", expected " +
                             std::to_string(input_dim()));
    }
    return tensor(input.reshaped({probe_dim_, target_dim_}), ancilla_init_).reshaped(register_dims());
}

StateVector DecisionMachine::run(const StateVector &input) const { return apply(unitary_, prepare(input)); }

DecisionMachine DecisionMachine::with_unitary(Operator unitary) const {
    return DecisionMachine(std::move(unitary), probe_dim_, target_dim_, ancilla_dims_, output_qubit_, ancilla_init_);
}

StateVector apply_map(const KMap &k, const StateVector &s) {
    return std::visit(
        [&](const auto &m) -> StateVector {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AntiLinearMap>) {
                return apply_antilinear(m, s);
            } else {
                return apply(m, s);
            }
        },
        k);
}

bool is_antilinear(const KMap &k) noexcept { return std::holds_alternative<AntiLinearMap>(k); }

std::size_t map_dim(const KMap &k) noexcept {
    return std::visit(
        [](const auto &m) -> std::size_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AntiLinearMap>) {
                return m.dim();
            } else {
                return m.dim();
            }
        },
        k);
}

double swap_test_probability(const StateVector &phi, const StateVector &psi) {
    if (phi.size() != psi.size()) {
        throw DimensionError("swap_test_probability: dimension mismatch");
    }
    phi.require_physical("swap_test_probability");
    psi.require_physical("swap_test_probability");
    return 0.5 * (1.0 + std::norm(inner(phi, psi)));
}

DecisionMachine build_swap_test_machine(std::size_t state_dim) {
    if (state_dim < 2) {
        throw DimensionError("SWAP test needs state_dim >= 2");
    }
    const Dims dims{state_dim, state_dim, 2};
    const Operator h = embed(gates::hadamard(), dims, {2});
    const Operator p1 = Operator::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const Operator p0 = Operator::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    // |0><0| (x) I + |1><1| (x) SWAP on (answer, probe, target).
    const Operator cswap = embed(kron(p0, Operator::identity(state_dim * state_dim)) +
                                     kron(p1, gates::swap(state_dim)),
                                 dims, {2, 0, 1});
    return DecisionMachine(h * cswap * h, state_dim, state_dim, {2}, 2);
}

DecisionMachine build_k_comparison_machine(const Operator &k) {
    if (!k.is_unitary()) {
        throw NotUnitaryError("K-comparison needs a unitary K");
    }
    const DecisionMachine swap = build_swap_test_machine(k.dim());
    const Operator on_probe = embed(k, swap.register_dims(), {0});
    return swap.with_unitary(swap.unitary() * on_probe);
}

DecisionMachine build_constant_machine(bool answer_yes, std::size_t probe_dim, std::size_t target_dim,
                                       Dims ancilla_dims) {
    if (ancilla_dims.empty() || ancilla_dims.front() != 2) {
        throw DimensionError("constant machine answers on its first ancilla, which must be a qubit");
    }
    Dims dims{probe_dim, target_dim};
    dims.insert(dims.end(), ancilla_dims.begin(), ancilla_dims.end());
    Operator u = answer_yes ? Operator::identity(dims_product(dims)) : embed(gates::pauli_x(), dims, {2});
    return DecisionMachine(std::move(u), probe_dim, target_dim, std::move(ancilla_dims), 2);
}

OutcomeDistribution evaluate(const DecisionMachine &machine, const StateVector &phi, const StateVector &psi) {
    if (phi.size() != machine.probe_dim() || psi.size() != machine.target_dim()) {
        throw DimensionError("evaluate: inputs do not match the machine's probe and target dimensions");
    }
    phi.require_physical("evaluate (phi)");
    psi.require_physical("evaluate (psi)");
    const StateVector out = machine.run(tensor(phi, psi));
    auto m = measure_qubit(out, machine.output_qubit());
    return {m.p0, m.p1, std::move(m.collapsed0), std::move(m.collapsed1)};
}

std::pair<StateVector, StateVector> sample_matched_pair(const KMap &k, Rng &rng) {
    StateVector phi = haar_state(map_dim(k), rng);
    StateVector psi = apply_map(k, phi).normalized();
    return {std::move(phi), std::move(psi)};
}

std::pair<StateVector, StateVector> sample_mismatched_pair(const KMap &k, Rng &rng) {
    const std::size_t d = map_dim(k);
    for (;;) {
        StateVector phi = haar_state(d, rng);
        const StateVector image = apply_map(k, phi).normalized();
        StateVector psi = haar_state(d, rng);
        if (std::abs(inner(image, psi)) <= kMismatchRejectOverlap) {
            return {std::move(phi), std::move(psi)};
        }
    }
}

bool is_matched(const KMap &k, const StateVector &phi, const StateVector &psi) {
    return std::abs(inner(apply_map(k, phi).normalized(), psi.normalized())) >= 1.0 - kMatchOverlapTol;
}

std::string OneSidedness::label() const {
    if (yes_certain_on_match && no_certain_on_mismatch) {
        return "both";
    }
    if (yes_certain_on_match) {
        return "yes-certain-on-match";
    }
    if (no_certain_on_mismatch) {
        return "no-certain-on-mismatch";
    }
    return "neither";
}

OneSidedness classify_one_sidedness(const DecisionMachine &machine, const KMap &k, std::size_t n_samples,
                                    std::uint64_t seed, double tol) {
    if (n_samples == 0) {
        throw Error("classify_one_sidedness needs n_samples >= 1");
    }
    OneSidedness c;
    Rng matched_rng(derive_seed(seed, 0));
    Rng mismatched_rng(derive_seed(seed, 1));
    for (std::size_t i = 0; i < n_samples; ++i) {
        const auto [phi, psi] = sample_matched_pair(k, matched_rng);
        const auto out = evaluate(machine, phi, psi);
        c.max_matched_p_no = std::max(c.max_matched_p_no, out.p_no);
        c.max_matched_p_yes = std::max(c.max_matched_p_yes, out.p_yes);
    }
    for (std::size_t i = 0; i < n_samples; ++i) {
        const auto [phi, psi] = sample_mismatched_pair(k, mismatched_rng);
        const auto out = evaluate(machine, phi, psi);
        c.max_mismatched_p_yes = std::max(c.max_mismatched_p_yes, out.p_yes);
        c.max_mismatched_p_no = std::max(c.max_mismatched_p_no, out.p_no);
    }
    c.yes_certain_on_match = c.max_matched_p_no <= tol;
    c.no_certain_on_mismatch = c.max_mismatched_p_yes <= tol;
    return c;
}

nlohmann::json to_json(const DecisionMachine &machine) {
    return {{"probe_dim", machine.probe_dim()},
            {"target_dim", machine.target_dim()},
            {"ancilla_dims", machine.ancilla_dims()},
            {"output_qubit", machine.output_qubit()},
            {"unitary", to_json(machine.unitary())},
            {"ancilla_init", to_json(machine.ancilla_init())}};
}

DecisionMachine machine_from_json(const nlohmann::json &j) {
    try {
        std::optional<StateVector> init;
        if (j.contains("ancilla_init")) {
            init = state_from_json(j.at("ancilla_init"));
        }
        return DecisionMachine(operator_from_json(j.at("unitary")), j.at("probe_dim").get<std::size_t>(),
                               j.at("target_dim").get<std::size_t>(), j.at("ancilla_dims").get<Dims>(),
                               j.at("output_qubit").get<std::size_t>(), std::move(init));
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("invalid machine JSON: ") + e.what());
    }
}

nlohmann::json to_json(const OneSidedness &c) {
    return {{"max_matched_p_no", c.max_matched_p_no},
            {"max_matched_p_yes", c.max_matched_p_yes},
            {"max_mismatched_p_yes", c.max_mismatched_p_yes},
            {"max_mismatched_p_no", c.max_mismatched_p_no},
            {"yes_certain_on_match", c.yes_certain_on_match},
            {"no_certain_on_mismatch", c.no_certain_on_mismatch},
            {"classification", c.label()}};
}

} // namespace qcompare
