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
#include <future>
#include <thread>

#include "qcompare/linalg.hpp"
#include "qcompare/search.hpp"
#include "qcompare/verifier.hpp"

namespace qcompare {

Operator hermitian_from_parameters(std::span<const double> theta, std::size_t dim) {
    if (theta.size() != dim * dim) {
        throw DimensionError("a " + std::to_string(dim) + "x" + std::to_string(dim) + " Hermitian needs " +
                             std::to_string(dim * dim) + " parameters");
    }
    Operator h(dim);
    std::size_t p = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = theta[p++];
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r + 1; c < dim; ++c) {
            h(r, c) = cplx(theta[p], theta[p + 1]);
            h(c, r) = std::conj(h(r, c));
            p += 2;
        }
    }
    return h;
}

std::vector<double> parameters_from_hermitian(const Operator &h) {
    const std::size_t dim = h.dim();
    std::vector<double> theta;
    theta.reserve(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        theta.push_back(h(i, i).real());
    }
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = r + 1; c < dim; ++c) {
            theta.push_back(h(r, c).real());
            theta.push_back(h(r, c).imag());
        }
    }
    return theta;
}

DecisionMachine machine_from_parameters(std::span<const double> theta, std::size_t probe_dim,
                                        std::size_t target_dim, const Dims &ancilla_dims) {
    const std::size_t n = probe_dim * target_dim * dims_product(ancilla_dims);
    const Operator h = hermitian_from_parameters(theta, n);
    return DecisionMachine(expm(cplx(0.0, 1.0) * h), probe_dim, target_dim, ancilla_dims, 2);
}

namespace {

// Quadratic objective sum_s w_s ||P U x_s||^2 where P keeps the entries
// whose output digit equals `value`.
struct Objective {
    std::vector<StateVector> inputs;
    std::vector<double> weights;
    std::vector<bool> keep;

    double value(const Operator &u) const {
        double f = 0.0;
        for (std::size_t s = 0; s < inputs.size(); ++s) {
            const StateVector y = apply(u, inputs[s]);
            double branch = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (keep[i]) {
                    branch += std::norm(y[i]);
                }
            }
            f += weights[s] * branch;
        }
        return f;
    }

    // Ascent generator A = (B^dagger - B)/2 with B = sum_s w_s y_s (P y_s)^dagger.
    // Along U -> exp(tA) U the objective grows at rate 2 ||A||_F^2.
    Operator ascent_direction(const Operator &u) const {
        const std::size_t n = u.dim();
        Operator b(n);
        for (std::size_t s = 0; s < inputs.size(); ++s) {
            const StateVector y = apply(u, inputs[s]);
            for (std::size_t r = 0; r < n; ++r) {
                const cplx wy = weights[s] * y[r];
                for (std::size_t c = 0; c < n; ++c) {
                    if (keep[c]) {
                        b(r, c) += wy * std::conj(y[c]);
                    }
                }
            }
        }
        return 0.5 * (b.adjoint() - b);
    }
};

double frobenius2(const Operator &a) { return kernels::norm2(a.entries()); }

// Largest amplitude of the forbidden branch over `inputs` (full register).
double forbidden_amplitude(const Operator &u, const std::vector<StateVector> &inputs, const std::vector<bool> &keep) {
    double worst = 0.0;
    for (const StateVector &x : inputs) {
        const StateVector y = apply(u, x);
        double branch = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (keep[i]) {
                branch += std::norm(y[i]);
            }
        }
        worst = std::max(worst, std::sqrt(branch));
    }
    return worst;
}

// Sends the span of `constraints` exactly into the allowed output subspace
// while keeping U's action on the orthogonal complement as far as possible.
Operator restore_feasibility(const Operator &u, const std::vector<StateVector> &constraints,
                             const std::vector<bool> &forbidden, const Dims &dims) {
    const auto q = orthonormal_basis(constraints);
    std::vector<StateVector> projected;
    for (const StateVector &col : q) {
        StateVector w = apply(u, col);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (forbidden[i]) {
                w[i] = 0.0;
            }
        }
        projected.push_back(std::move(w));
    }
    auto images = orthonormal_basis(projected, 0.0);
    // A constraint direction sent wholly into the forbidden subspace loses
    // its image; refill from the allowed basis.
    for (std::size_t i = 0; i < forbidden.size() && images.size() < q.size(); ++i) {
        if (forbidden[i]) {
            continue;
        }
        images.push_back(StateVector::basis(forbidden.size(), i).reshaped(dims));
        images = orthonormal_basis(images, 1e-6);
    }
    const auto q_full = complete_basis(q);
    std::vector<StateVector> candidates;
    for (std::size_t c = q.size(); c < q_full.size(); ++c) {
        candidates.push_back(apply(u, q_full[c]));
    }
    return from_columns(complete_basis(images, candidates)) * from_columns(q_full).adjoint();
}

} // namespace

RestartResult run_restart(const SearchConfig &config, std::size_t index, DecisionMachine *machine_out) {
    if (config.case_id != 1 && config.case_id != 2) {
        throw Error("case_id must be 1 or 2");
    }
    const std::size_t d = map_dim(config.k);
    RestartResult result;
    result.index = index;
    result.seed = derive_seed(config.seed, index);

    const DecisionMachine skeleton = build_constant_machine(true, d, d, config.ancilla_dims);
    const Dims dims = skeleton.register_dims();
    const std::size_t n = dims_product(dims);
    const std::size_t out_stride = dims_product(std::span(dims).subspan(3));
    // Case 1 must never say YES on a mismatch, case 2 never NO on a match.
    const std::size_t watched = config.case_id == 1 ? 0 : 1;
    std::vector<bool> keep(n);
    for (std::size_t i = 0; i < n; ++i) {
        keep[i] = (i / out_stride) % 2 == watched;
    }

    auto useful_pair = [&](Rng &rng) {
        return config.case_id == 1 ? sample_matched_pair(config.k, rng) : sample_mismatched_pair(config.k, rng);
    };
    auto constrained_pair = [&](Rng &rng) {
        return config.case_id == 1 ? sample_mismatched_pair(config.k, rng) : sample_matched_pair(config.k, rng);
    };

    Rng objective_rng(derive_seed(result.seed, 1));
    Rng constraint_rng(derive_seed(result.seed, 2));
    std::vector<StateVector> useful, constraints;
    for (std::size_t s = 0; s < config.objective_samples; ++s) {
        const auto [phi, psi] = useful_pair(objective_rng);
        useful.push_back(skeleton.prepare(tensor(phi, psi)));
    }
    const bool qubit_probes = d == 2 && std::visit(
                                            [](const auto &m) {
                                                using T = std::decay_t<decltype(m)>;
                                                if constexpr (std::is_same_v<T, AntiLinearMap>) {
                                                    return m.is_nonsingular();
                                                } else {
                                                    return std::abs(m.determinant()) > kSingularTol;
                                                }
                                            },
                                            config.k);
    if (qubit_probes) {
        for (const StateVector &p : constraint_probes(build_probe_set(config.k), config.case_id)) {
            constraints.push_back(skeleton.prepare(p));
        }
    }
    for (std::size_t s = 0; s < config.constraint_samples; ++s) {
        const auto [phi, psi] = constrained_pair(constraint_rng);
        constraints.push_back(skeleton.prepare(tensor(phi, psi)));
    }

    Objective objective;
    objective.keep = keep;
    for (const StateVector &x : useful) {
        objective.inputs.push_back(x);
        objective.weights.push_back(1.0 / static_cast<double>(useful.size()));
    }
    const std::size_t n_useful = objective.inputs.size();
    for (const StateVector &c : constraints) {
        objective.inputs.push_back(c);
        objective.weights.push_back(0.0);
    }

    Rng init_rng(derive_seed(result.seed, 0));
    std::vector<double> theta(n * n);
    for (double &t : theta) {
        t = init_rng.normal();
    }
    Operator u = expm(cplx(0.0, 1.0) * hermitian_from_parameters(theta, n));

    double step = 0.1;
    for (double mu : config.penalty_schedule) {
        const double w = -mu / static_cast<double>(constraints.size());
        std::fill(objective.weights.begin() + static_cast<std::ptrdiff_t>(n_useful), objective.weights.end(), w);
        for (std::size_t it = 0; it < config.iterations_per_stage; ++it) {
            const double f0 = objective.value(u);
            const Operator a = objective.ascent_direction(u);
            const double slope = 2.0 * frobenius2(a);
            if (slope < 1e-28) {
                break;
            }
            bool accepted = false;
            while (step > 1e-16) {
                Operator trial = expm(step * a) * u;
                if (objective.value(trial) >= f0 + 1e-4 * step * slope) {
                    u = std::move(trial);
                    accepted = true;
                    step *= 2.0;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                step = 0.1 / mu;
                break;
            }
        }
        u = reorthonormalize(u);
    }
    result.penalty_violation = forbidden_amplitude(u, constraints, keep);

    std::vector<bool> forbidden = keep;
    u = restore_feasibility(u, constraints, forbidden, dims);
    const DecisionMachine machine = skeleton.with_unitary(u);

    Rng validation_rng(derive_seed(result.seed, 3));
    std::vector<StateVector> validation = constraints;
    for (std::size_t s = 0; s < config.eval_samples; ++s) {
        const auto [phi, psi] = constrained_pair(validation_rng);
        validation.push_back(skeleton.prepare(tensor(phi, psi)));
    }
    result.violation = forbidden_amplitude(u, validation, keep);
    result.nontriviality =
        nontriviality(machine, config.k, config.case_id, config.eval_samples, derive_seed(result.seed, 4));
    result.feasible = result.violation <= config.epsilon;
    if (machine_out != nullptr) {
        *machine_out = machine;
    }
    return result;
}

SearchResult adversarial_search(const SearchConfig &config) {
    if (config.budget == 0) {
        throw Error("adversarial_search needs budget >= 1");
    }
    const unsigned threads =
        config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());

    const std::size_t d = map_dim(config.k);
    std::vector<RestartResult> results(config.budget);
    std::vector<DecisionMachine> machines(config.budget, build_constant_machine(true, d, d, config.ancilla_dims));

    for (std::size_t begin = 0; begin < config.budget; begin += threads) {
        const std::size_t end = std::min<std::size_t>(config.budget, begin + threads);
        std::vector<std::future<RestartResult>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                       [&config, &machines, i] { return run_restart(config, i, &machines[i]); }));
        }
        for (std::size_t i = begin; i < end; ++i) {
            results[i] = batch[i - begin].get();
        }
    }

    // Max-reduction over restart index order: independent of scheduling.
    std::size_t best = 0;
    bool any_feasible = false;
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RestartResult &r = results[i];
        feasible += r.feasible ? 1 : 0;
        if (r.feasible) {
            if (!any_feasible || r.nontriviality > results[best].nontriviality) {
                best = i;
            }
            any_feasible = true;
        } else if (!any_feasible && r.violation < results[best].violation) {
            best = i;
        }
    }
    return SearchResult{machines[best],  results[best].nontriviality, results[best].violation, any_feasible,
                        feasible,        std::move(results)};
}

nlohmann::json to_json(const SearchResult &r, const SearchConfig &config) {
    double worst_penalty = 0.0;
    for (const RestartResult &restart : r.restarts) {
        worst_penalty = std::max(worst_penalty, restart.penalty_violation);
    }
    const bool antilinear = is_antilinear(config.k);
    const Operator &linear =
        antilinear ? std::get<AntiLinearMap>(config.k).linear_part() : std::get<Operator>(config.k);
    return {{"case", config.case_id},
            {"antilinear", antilinear},
            {"k_nonsingular", std::abs(linear.determinant()) > kSingularTol},
            {"epsilon", config.epsilon},
            {"ancilla_dims", config.ancilla_dims},
            {"seed", config.seed},
            {"restarts", r.restarts.size()},
            {"feasible_restarts", r.feasible_restarts},
            {"found_feasible", r.found_feasible},
            {"best_nontriviality", r.best_nontriviality},
            {"achieved_violation", r.achieved_violation},
            {"max_penalty_violation", worst_penalty},
            {"threshold", kImpossibilityThreshold},
            {"threshold_held", !antilinear || !r.found_feasible || r.best_nontriviality <= kImpossibilityThreshold}};
}

} // namespace qcompare
