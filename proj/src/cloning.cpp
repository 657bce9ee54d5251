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
#include <random>

#include "qcompare/cloning.hpp"
#include "qcompare/linalg.hpp"
#include "qcompare/literal.hpp"
#include "qcompare/random.hpp"

namespace qcompare {

Cloner::Cloner(Operator unitary, Dims dims, std::array<std::size_t, 2> clone_factors,
               std::optional<StateVector> blank_init)
    : unitary_(std::move(unitary)), dims_(std::move(dims)), clone_factors_(clone_factors) {
    if (dims_.size() < 2) {
        throw DimensionError("a cloner register needs an input and at least one blank");
    }
    if (unitary_.dim() != dims_product(dims_)) {
        throw DimensionError("cloner unitary does not match its register");
    }
    if (!unitary_.is_unitary()) {
        throw NotUnitaryError("cloner unitary fails the unitarity check");
    }
    for (std::size_t f : clone_factors_) {
        if (f >= dims_.size() || dims_[f] != dims_.front()) {
            throw DimensionError("clone factors must address factors of the input's dimension");
        }
    }
    if (clone_factors_[0] == clone_factors_[1]) {
        throw DimensionError("the two clone factors must differ");
    }
    const Dims rest(dims_.begin() + 1, dims_.end());
    if (blank_init) {
        blank_init_ = blank_init->reshaped(rest);
    } else {
        blank_init_ = StateVector::basis(dims_product(rest), 0).reshaped(rest);
    }
    blank_init_.require_physical("blank_init");
}

StateVector Cloner::run(const StateVector &psi) const {
    if (psi.size() != input_dim()) {
        throw DimensionError("cloner input has the wrong dimension");
    }
    return apply(unitary_, tensor(psi.reshaped({input_dim()}), blank_init_).reshaped(dims_));
}

Cloner universal_cloner() {
    const Dims dims{2, 2, 2};
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 6.0);
    auto ket = [&](std::size_t index) { return StateVector::basis(8, index).reshaped(dims); };
    const StateVector img0 = a * ket(0b000) + b * (ket(0b011) + ket(0b101));
    const StateVector img1 = a * ket(0b111) + b * (ket(0b010) + ket(0b100));
    const Operator u = isometry_completion({ket(0b000), ket(0b100)}, {img0, img1});
    return Cloner(u, dims, {0, 1});
}

Cloner trivial_cloner(std::size_t dim) { return Cloner(Operator::identity(dim * dim), {dim, dim}, {0, 1}); }

GameResult run_game(const Cloner &cloner, const StateVector &psi, int clone_index) {
    if (clone_index != 1 && clone_index != 2) {
        throw Error("clone_index must be 1 or 2");
    }
    psi.require_physical("run_game");
    const StateVector clones = cloner.run(psi);
    const std::size_t clone = cloner.clone_factors()[static_cast<std::size_t>(clone_index - 1)];
    const std::size_t d = cloner.input_dim();

    // Register: cloner factors, reference copy of psi, SWAP-test answer qubit.
    Dims dims = cloner.dims();
    const std::size_t ref = dims.size();
    const std::size_t answer = ref + 1;
    dims.push_back(d);
    dims.push_back(2);
    StateVector state = tensor(tensor(clones, psi.reshaped({d})), StateVector::basis(2, 0)).reshaped(dims);

    const Operator h = embed(gates::hadamard(), dims, {answer});
    const Operator p0 = Operator::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const Operator p1 = Operator::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const Operator cswap =
        embed(kron(p0, Operator::identity(d * d)) + kron(p1, gates::swap(d)), dims, {answer, clone, ref});
    state = apply(h, apply(cswap, apply(h, state)));

    GameResult g;
    g.p_pass = measure_qubit(state, answer).p0;
    g.expected_payoff = 2.0 * g.p_pass - 1.0;
    g.fidelity = fidelity(partial_trace(clones, {clone}), psi.reshaped({d}));
    return g;
}

double sample_game(const Cloner &cloner, const StateVector &psi, int clone_index, std::size_t n_rounds,
                   std::uint64_t seed) {
    if (n_rounds == 0) {
        throw Error("sample_game needs n_rounds >= 1");
    }
    const double p = run_game(cloner, psi, clone_index).p_pass;
    Rng rng(seed);
    long long total = 0;
    for (std::size_t i = 0; i < n_rounds; ++i) {
        total += rng.uniform() < p ? 1 : -1;
    }
    return static_cast<double>(total) / static_cast<double>(n_rounds);
}

nlohmann::json to_json(const GameResult &g) {
    return {{"p_pass", g.p_pass}, {"expected_payoff", g.expected_payoff}, {"fidelity", g.fidelity}};
}

nlohmann::json to_json(const Cloner &c) {
    return {{"dims", c.dims()},
            {"clone_factors", c.clone_factors()},
            {"unitary", to_json(c.unitary())},
            {"blank_init", to_json(c.blank_init())}};
}

Cloner cloner_from_json(const nlohmann::json &j) {
    try {
        std::optional<StateVector> init;
        if (j.contains("blank_init")) {
            init = state_from_json(j.at("blank_init"));
        }
        return Cloner(operator_from_json(j.at("unitary")), j.at("dims").get<Dims>(),
                      j.at("clone_factors").get<std::array<std::size_t, 2>>(), std::move(init));
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("invalid cloner JSON: ") + e.what());
    }
}

} // namespace qcompare
