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
#include <numbers>

#include "qcompare/linalg.hpp"
#include "qcompare/verifier.hpp"

namespace qcompare {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kAbsentAmplitude = 1e-14;
const cplx kI{0.0, 1.0};

// Entries of `s` whose `factor` digit equals `value`, with that factor removed.
StateVector drop_qubit(const StateVector &s, std::size_t factor, std::size_t value) {
    const Dims &dims = s.dims();
    const std::size_t stride = dims_product(std::span(dims).subspan(factor + 1));
    std::vector<cplx> out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((i / stride) % 2 == value) {
            out.push_back(s[i]);
        }
    }
    Dims rest = dims;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(factor));
    if (rest.empty()) {
        rest.push_back(1);
    }
    return StateVector(std::move(out), std::move(rest));
}

ProbeSet::Probe make_probe(StateVector raw) {
    StateVector normalized = raw.normalized();
    return {std::move(raw), std::move(normalized)};
}

void require_case(int case_id) {
    if (case_id != 1 && case_id != 2) {
        throw Error("case_id must be 1 or 2");
    }
}

} // namespace

BranchDecomposition extract_branches(const DecisionMachine &machine, const StateVector &input) {
    const StateVector out = machine.run(input);
    BranchDecomposition b;
    b.yes_component = project_qubit(out, machine.output_qubit(), 0);
    b.no_component = project_qubit(out, machine.output_qubit(), 1);
    b.yes_amplitude = b.yes_component.norm();
    b.no_amplitude = b.no_component.norm();
    if (b.yes_amplitude > kAbsentAmplitude) {
        b.yes_vector = drop_qubit(out, machine.output_qubit(), 0).normalized();
    }
    if (b.no_amplitude > kAbsentAmplitude) {
        b.no_vector = drop_qubit(out, machine.output_qubit(), 1).normalized();
    }
    return b;
}

ProbeSet build_probe_set(const KMap &k) {
    if (map_dim(k) != 2) {
        throw DimensionError("the probe construction is defined for a qubit K");
    }
    const Operator &linear = std::visit(
        [](const auto &m) -> const Operator & {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, AntiLinearMap>) {
                return m.linear_part();
            } else {
                return m;
            }
        },
        k);
    if (std::abs(linear.determinant()) <= kSingularTol) {
        throw SingularMapError("K is singular (|det| <= 1e-9)");
    }

    ProbeSet p;
    p.antilinear = is_antilinear(k);
    const StateVector ket0 = StateVector::basis(2, 0);
    const StateVector ket1 = StateVector::basis(2, 1);
    const StateVector plus = (1.0 / kSqrt2) * (ket0 + ket1);
    p.phi0 = apply_map(k, ket0);
    p.phi1 = apply_map(k, ket1);

    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            p.basis[2 * i + j] = make_probe(tensor(i == 0 ? ket0 : ket1, j == 0 ? p.phi0 : p.phi1));
        }
    }
    p.plus_phi1 = make_probe(tensor(plus, p.phi1));
    p.plus_phi0 = make_probe(tensor(plus, p.phi0));
    p.sum = make_probe(0.5 * tensor(ket0 + ket1, p.phi0 + p.phi1));

    // K(|0> + i|1>) is phi0 - i phi1 for anti-linear K and phi0 + i phi1 for
    // linear K; the twisted probe pairs |0> + i|1> with that image.
    const cplx twist = p.antilinear ? -kI : kI;
    p.twisted = make_probe(0.5 * tensor(ket0 + kI * ket1, p.phi0 + twist * p.phi1));

    const double r_sum = distance(apply_map(k, ket0 + ket1), p.phi0 + p.phi1);
    const double r_twist = distance(apply_map(k, ket0 + kI * ket1), p.phi0 + twist * p.phi1);
    p.identity_residual = std::max(r_sum, r_twist);
    if (p.identity_residual > kProbeIdentityTol) {
        throw Error("probe identities fail: residual " + std::to_string(p.identity_residual));
    }
    return p;
}

std::vector<StateVector> constraint_probes(const ProbeSet &probes, int case_id) {
    require_case(case_id);
    if (case_id == 1) {
        return {probes.basis_probe(0, 1).normalized, probes.basis_probe(1, 0).normalized,
                probes.plus_phi1.normalized, probes.plus_phi0.normalized};
    }
    return {probes.basis_probe(0, 0).normalized, probes.basis_probe(1, 1).normalized, probes.sum.normalized,
            probes.twisted.normalized};
}

double case1_bound_constant() { return 1.0 + kSqrt2; }

double case2_bound_constant(const ProbeSet &probes) {
    // ||phi1|| N01 = N(sum) + i N(twisted) - (1+i)/2 (N00 + N11), with every
    // N(.) of a raw probe bounded by ||raw|| * v; symmetric for N10.
    const double n0 = probes.phi0.norm();
    const double n1 = probes.phi1.norm();
    const double numerator = probes.sum.raw.norm() + probes.twisted.raw.norm() + (n0 + n1) / kSqrt2;
    return numerator / std::min(n0, n1);
}

VerificationReport verify_case1(const DecisionMachine &machine, const KMap &k) {
    const ProbeSet probes = build_probe_set(k);
    VerificationReport r;
    r.case_id = 1;
    r.antilinear = probes.antilinear;

    for (const StateVector &probe : constraint_probes(probes, 1)) {
        r.violation = std::max(r.violation, extract_branches(machine, probe).yes_amplitude);
    }
    const auto b00 = extract_branches(machine, probes.basis_probe(0, 0).normalized);
    const auto b11 = extract_branches(machine, probes.basis_probe(1, 1).normalized);
    r.amplitudes = {{"a00", b00.yes_amplitude}, {"a11", b11.yes_amplitude}};
    r.triviality_gap = std::max(b00.yes_amplitude, b11.yes_amplitude);
    r.bound_constant = case1_bound_constant();

    // |1>phi1^ = sqrt2 |+>phi1^ - |0>phi1^ (and the mirror for a00), applied
    // to the YES branches.
    const auto yes = [&](const ProbeSet::Probe &p) { return extract_branches(machine, p.normalized).yes_component; };
    const double a11 = (kSqrt2 * yes(probes.plus_phi1) - yes(probes.basis_probe(0, 1))).norm();
    const double a00 = (kSqrt2 * yes(probes.plus_phi0) - yes(probes.basis_probe(1, 0))).norm();
    r.recombination_residual =
        std::max(std::abs(a11 - b11.yes_amplitude), std::abs(a00 - b00.yes_amplitude));

    r.premise_met = r.violation <= kPremiseTol;
    r.verdict = r.triviality_gap <= r.bound_constant * r.violation + kVerdictSlack;
    return r;
}

VerificationReport verify_case2(const DecisionMachine &machine, const KMap &k) {
    const ProbeSet probes = build_probe_set(k);
    VerificationReport r;
    r.case_id = 2;
    r.antilinear = probes.antilinear;

    for (const StateVector &probe : constraint_probes(probes, 2)) {
        r.violation = std::max(r.violation, extract_branches(machine, probe).no_amplitude);
    }
    const auto b01 = extract_branches(machine, probes.basis_probe(0, 1).normalized);
    const auto b10 = extract_branches(machine, probes.basis_probe(1, 0).normalized);
    r.amplitudes = {{"b01", b01.no_amplitude}, {"b10", b10.no_amplitude}};
    r.triviality_gap = std::max(b01.no_amplitude, b10.no_amplitude);
    r.bound_constant = case2_bound_constant(probes);

    if (probes.antilinear) {
        // NO branches of the raw probes, by linearity.
        const auto no = [&](const ProbeSet::Probe &p) { return extract_branches(machine, p.raw).no_component; };
        const StateVector n00 = no(probes.basis_probe(0, 0));
        const StateVector n11 = no(probes.basis_probe(1, 1));
        const StateVector n_sum = no(probes.sum);
        const StateVector n_twist = no(probes.twisted);
        // 2N(sum) - N00 - N11 = N01 + N10 and 2N(twisted) - N00 - N11 = i(N10 - N01).
        const StateVector diag = n00 + n11;
        const StateVector n01 = n_sum + kI * n_twist - cplx(0.5, 0.5) * diag;
        const StateVector n10 = n_sum - kI * n_twist - cplx(0.5, -0.5) * diag;
        const double rec01 = n01.norm() / probes.phi1.norm();
        const double rec10 = n10.norm() / probes.phi0.norm();
        r.recombination_residual =
            std::max(std::abs(rec01 - b01.no_amplitude), std::abs(rec10 - b10.no_amplitude));
    }

    r.premise_met = r.violation <= kPremiseTol;
    r.verdict = r.triviality_gap <= r.bound_constant * r.violation + kVerdictSlack;
    return r;
}

VerificationReport verify_case(const DecisionMachine &machine, const KMap &k, int case_id) {
    require_case(case_id);
    return case_id == 1 ? verify_case1(machine, k) : verify_case2(machine, k);
}

double nontriviality(const DecisionMachine &machine, const KMap &k, int case_id, std::size_t n_samples,
                     std::uint64_t seed) {
    require_case(case_id);
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        if (case_id == 1) {
            const auto [phi, psi] = sample_matched_pair(k, rng);
            worst = std::max(worst, evaluate(machine, phi, psi).p_yes);
        } else {
            const auto [phi, psi] = sample_mismatched_pair(k, rng);
            worst = std::max(worst, evaluate(machine, phi, psi).p_no);
        }
    }
    return worst;
}

DecisionMachine build_exactly_constrained_machine(const KMap &k, int case_id, const Dims &ancilla_dims,
                                                  std::uint64_t seed) {
    require_case(case_id);
    if (ancilla_dims.empty() || ancilla_dims.front() != 2) {
        throw DimensionError("the first ancilla is the output qubit and must have dimension 2");
    }
    const ProbeSet probes = build_probe_set(k);
    const DecisionMachine skeleton =
        build_constant_machine(true, 2, 2, ancilla_dims); // identity, for the register layout
    const Dims dims = skeleton.register_dims();
    const std::size_t n = dims_product(dims);
    const std::size_t out_stride = dims_product(std::span(dims).subspan(3));

    std::vector<StateVector> inputs;
    for (const StateVector &probe : constraint_probes(probes, case_id)) {
        inputs.push_back(skeleton.prepare(probe));
    }
    const auto span_basis = orthonormal_basis(inputs);

    // Case 1 forces the constraint span into NO (output 1), case 2 into YES.
    const std::size_t forced = case_id == 1 ? 1 : 0;
    std::vector<StateVector> forced_basis;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i / out_stride) % 2 == forced) {
            forced_basis.push_back(StateVector::basis(n, i).reshaped(dims));
        }
    }
    Rng rng(seed);
    const Operator mix = haar_unitary(forced_basis.size(), rng);
    std::vector<StateVector> images;
    for (std::size_t c = 0; c < span_basis.size(); ++c) {
        StateVector img = StateVector::zeros(dims);
        for (std::size_t r = 0; r < forced_basis.size(); ++r) {
            img += mix(r, c) * forced_basis[r];
        }
        images.push_back(std::move(img));
    }
    const Operator scramble = haar_unitary(n, rng);
    std::vector<StateVector> candidates;
    for (std::size_t c = 0; c < n; ++c) {
        candidates.push_back(StateVector(scramble.column(c), dims));
    }
    return skeleton.with_unitary(isometry_completion(span_basis, images, candidates));
}

DecisionMachine perturb_machine(const DecisionMachine &machine, double eps, std::uint64_t seed) {
    const std::size_t n = machine.unitary().dim();
    Rng rng(seed);
    Operator h(n);
    for (std::size_t r = 0; r < n; ++r) {
        h(r, r) = rng.normal();
        for (std::size_t c = r + 1; c < n; ++c) {
            h(r, c) = rng.complex_normal();
            h(c, r) = std::conj(h(r, c));
        }
    }
    double fro = 0.0;
    for (const cplx &e : h.entries()) {
        fro += std::norm(e);
    }
    const Operator step = expm(cplx(0.0, eps / std::sqrt(fro)) * h);
    return machine.with_unitary(step * machine.unitary());
}

nlohmann::json to_json(const VerificationReport &r) {
    nlohmann::json amps = nlohmann::json::object();
    for (const auto &[name, value] : r.amplitudes) {
        amps[name] = value;
    }
    nlohmann::json j = {{"case", r.case_id},
                        {"antilinear", r.antilinear},
                        {"violation", r.violation},
                        {"amplitudes", amps},
                        {"triviality_gap", r.triviality_gap},
                        {"bound_constant", r.bound_constant},
                        {"premise_met", r.premise_met},
                        {"verdict", r.verdict ? "pass" : "fail"}};
    j["recombination_residual"] =
        r.recombination_residual ? nlohmann::json(*r.recombination_residual) : nlohmann::json(nullptr);
    return j;
}

} // namespace qcompare
