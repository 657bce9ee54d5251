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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcompare/literal.hpp"
#include "qcompare/machines.hpp"

using namespace qcompare;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

StateVector ket(std::size_t i) { return StateVector::basis(2, i); }
StateVector plus() { return StateVector({kInvSqrt2, kInvSqrt2}); }
StateVector minus() { return StateVector({kInvSqrt2, -kInvSqrt2}); }

} // namespace

TEST_CASE("swap_test_probability closed form") {
    CHECK(swap_test_probability(ket(0), ket(0)) == doctest::Approx(1.0));
    CHECK(swap_test_probability(ket(0), ket(1)) == doctest::Approx(0.5));
    CHECK(swap_test_probability(ket(0), plus()) == doctest::Approx(0.75));
    CHECK_THROWS_AS(swap_test_probability(ket(0), StateVector::basis(3, 0)), DimensionError);
    CHECK_THROWS_AS(swap_test_probability(ket(0), StateVector({1.0, 1.0})), NormalizationError);
}

TEST_CASE("SWAP-test circuit") {
    const DecisionMachine m = build_swap_test_machine(2);
    CHECK(m.register_dims() == Dims{2, 2, 2});
    CHECK(m.output_qubit() == 2);
    CHECK(evaluate(m, ket(0), ket(0)).p_yes == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(evaluate(m, ket(0), ket(1)).p_yes == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(evaluate(m, plus(), minus()).p_yes == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(build_swap_test_machine(1), DimensionError);
    CHECK_THROWS_AS(evaluate(m, ket(0), StateVector::basis(3, 0)), DimensionError);
}

TEST_CASE("circuit and closed form agree on Haar pairs, soundness of NO") {
    for (std::size_t d : {2u, 3u}) {
        const DecisionMachine m = build_swap_test_machine(d);
        Rng rng(d);
        for (int i = 0; i < 1000; ++i) {
            const StateVector phi = haar_state(d, rng), psi = haar_state(d, rng);
            const auto out = evaluate(m, phi, psi);
            const double delta2 = std::norm(inner(phi, psi));
            REQUIRE(std::abs(out.p_yes - swap_test_probability(phi, psi)) <= 1e-10);
            REQUIRE(std::abs(out.p_no - (1.0 - delta2) / 2.0) <= 1e-10);
            REQUIRE(std::abs(out.p_yes + out.p_no - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("K-comparison machine") {
    const Operator x = gates::pauli_x();
    const DecisionMachine mx = build_k_comparison_machine(x);
    CHECK(evaluate(mx, ket(0), ket(1)).p_yes == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(evaluate(mx, ket(0), ket(0)).p_yes == doctest::Approx(0.5).epsilon(1e-14));

    // delta = |<+|0>| = 1/sqrt2, so p_yes = (1 + 1/2)/2; cross-checked by the
    // SWAP-test circuit on the pre-rotated probe.
    const DecisionMachine mh = build_k_comparison_machine(gates::hadamard());
    const double p = evaluate(mh, ket(0), ket(0)).p_yes;
    CHECK(p == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(p == doctest::Approx(evaluate(build_swap_test_machine(2), plus(), ket(0)).p_yes).epsilon(1e-14));

    CHECK_THROWS_AS(build_k_comparison_machine(Operator::from_rows({{1.0, 1.0}, {0.0, 1.0}})), NotUnitaryError);
}

TEST_CASE("K-comparison is perfectly complete and (1+delta^2)/2 on mismatches") {
    Rng rng(77);
    for (int i = 0; i < 1000; ++i) {
        const Operator k = haar_unitary(2, rng);
        const DecisionMachine m = build_k_comparison_machine(k);
        const StateVector phi = haar_state(2, rng);
        REQUIRE(evaluate(m, phi, apply(k, phi)).p_no <= 1e-12);
        const StateVector psi = haar_state(2, rng);
        const double delta2 = std::norm(inner(apply(k, phi), psi));
        REQUIRE(std::abs(evaluate(m, phi, psi).p_yes - (1.0 + delta2) / 2.0) <= 1e-10);
    }
}

TEST_CASE("constant machines") {
    const DecisionMachine no = build_constant_machine(false, 2, 2);
    const DecisionMachine yes = build_constant_machine(true, 2, 2, {2, 2});
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const StateVector phi = haar_state(2, rng), psi = haar_state(2, rng);
        REQUIRE(evaluate(no, phi, psi).p_no == doctest::Approx(1.0).epsilon(1e-14));
        REQUIRE(evaluate(yes, phi, psi).p_yes == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("machine invariants are enforced") {
    CHECK_THROWS_AS(DecisionMachine(Operator::identity(7), 2, 2, {2}, 2), DimensionError);
    CHECK_THROWS_AS(DecisionMachine(2.0 * Operator::identity(8), 2, 2, {2}, 2), NotUnitaryError);
    CHECK_THROWS_AS(DecisionMachine(Operator::identity(12), 2, 2, {3}, 2), DimensionError);
    CHECK_THROWS_AS(DecisionMachine(Operator::identity(8), 2, 2, {2}, 3), DimensionError);
    CHECK_THROWS_AS(DecisionMachine(Operator::identity(8), 2, 2, {2}, 2, StateVector({1.0, 1.0})),
                    NormalizationError);
    // Any qubit factor can carry the answer.
    const DecisionMachine m(Operator::identity(8), 2, 2, {2}, 0);
    CHECK(evaluate(m, ket(1), ket(0)).p_no == doctest::Approx(1.0));
}

TEST_CASE("sampled pairs respect the matched predicate") {
    const KMap orth = AntiLinearMap::orthogonal_complement();
    const KMap identity = Operator::identity(2);
    Rng rng(8);
    for (const KMap *k : {&orth, &identity}) {
        for (int i = 0; i < 200; ++i) {
            const auto [phi, psi] = sample_matched_pair(*k, rng);
            REQUIRE(is_matched(*k, phi, psi));
            const auto [phi2, psi2] = sample_mismatched_pair(*k, rng);
            REQUIRE_FALSE(is_matched(*k, phi2, psi2));
            REQUIRE(std::abs(inner(apply_map(*k, phi2).normalized(), psi2)) <= kMismatchRejectOverlap);
        }
    }
    // Ray equality ignores global phase and scale.
    CHECK(is_matched(orth, ket(0), StateVector({0.0, cplx(0.0, 1.0)})));
}

TEST_CASE("classify_one_sidedness") {
    const KMap identity = Operator::identity(2);
    const auto swap = classify_one_sidedness(build_swap_test_machine(2), identity, 500, 1);
    CHECK(swap.yes_certain_on_match);
    CHECK(swap.max_matched_p_no <= 1e-12);
    CHECK_FALSE(swap.no_certain_on_mismatch);
    CHECK(swap.label() == "yes-certain-on-match");

    const KMap orth = AntiLinearMap::orthogonal_complement();
    const auto no = classify_one_sidedness(build_constant_machine(false, 2, 2), orth, 200, 2);
    CHECK(no.no_certain_on_mismatch);
    CHECK(no.max_matched_p_yes == 0.0);
    CHECK_FALSE(no.yes_certain_on_match);
    CHECK(no.label() == "no-certain-on-mismatch");

    const auto swap_orth = classify_one_sidedness(build_swap_test_machine(2), orth, 500, 3);
    CHECK(swap_orth.label() == "neither");
    // Matched pair (|0>, K_orth|0> = |1>): delta = 0, so the SWAP test says NO half the time.
    const StateVector k0 = apply_map(orth, ket(0));
    CHECK(is_matched(orth, ket(0), k0));
    CHECK(evaluate(build_swap_test_machine(2), ket(0), k0).p_no == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(classify_one_sidedness(build_swap_test_machine(2), identity, 0, 1), Error);
}

TEST_CASE("machine JSON round trip") {
    const DecisionMachine m = build_k_comparison_machine(haar_unitary(2, 9));
    const nlohmann::json j = to_json(m);
    for (const char *key : {"probe_dim", "target_dim", "ancilla_dims", "output_qubit", "unitary", "ancilla_init"}) {
        CHECK(j.contains(key));
    }
    const DecisionMachine back = machine_from_json(nlohmann::json::parse(j.dump()));
    CHECK((back.unitary() - m.unitary()).max_abs() == 0.0);
    CHECK(back.output_qubit() == m.output_qubit());
    CHECK(back.ancilla_dims() == m.ancilla_dims());
    CHECK_THROWS_AS(machine_from_json(nlohmann::json{{"probe_dim", 2}}), ParseError);
}

TEST_CASE("state literals") {
    const StateVector s = parse_state_literal("[[0.7071,0],[0,0.7071]]");
    CHECK(s.size() == 2);
    CHECK(s[1] == cplx(0.0, 0.7071));
    CHECK_THROWS_AS(parse_state_literal("[[1,0],[0]]"), ParseError);
    CHECK_THROWS_AS(parse_state_literal("[[1,0],"), ParseError);
    CHECK_THROWS_AS(parse_state_literal("[]"), ParseError);
    CHECK_THROWS_AS(parse_matrix_literal("[[[1,0],[0,0]]]"), ParseError);
    const Operator m = parse_matrix_literal("[[[0,0],[-1,0]],[[1,0],[0,0]]]");
    CHECK((m - AntiLinearMap::orthogonal_complement().linear_part()).max_abs() == 0.0);
}
