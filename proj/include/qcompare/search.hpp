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
 * Numerical search for a non-trivial one-sided comparison machine.
 *
 * Each restart starts from U = exp(i H(theta)) for a seeded parameter
 * vector and climbs
 *
 *     mean_objective ||P U x||^2  -  mu * mean_constraint ||P U c||^2
 *
 * on the unitary group for an increasing penalty weight mu, where P
 * projects the output qubit onto YES (case 1) or NO (case 2). Objective
 * inputs are the pairs on which the machine should be useful (matched for
 * case 1, mismatched for case 2); constraint inputs are the pairs where the
 * answer must never be given (the proof's probes plus sampled pairs). A
 * final restoration step maps the constraint span exactly into the allowed
 * output subspace. Feasibility and non-triviality are then measured on
 * fresh samples.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "qcompare/machines.hpp"

namespace qcompare {

/// n*n reals -> Hermitian matrix: diagonal first, then (re, im) of the
/// strict upper triangle row by row.
Operator hermitian_from_parameters(std::span<const double> theta, std::size_t dim);
std::vector<double> parameters_from_hermitian(const Operator &h);

/// exp(i H(theta)) on probe (x) target (x) ancillas, output on the first ancilla.
DecisionMachine machine_from_parameters(std::span<const double> theta, std::size_t probe_dim,
                                        std::size_t target_dim, const Dims &ancilla_dims);

struct SearchConfig {
    KMap k = AntiLinearMap::orthogonal_complement();
    int case_id = 2;
    Dims ancilla_dims{2, 2};
    double epsilon = 1e-6;
    /// Number of restarts.
    std::size_t budget = 50;
    std::uint64_t seed = 0;
    std::size_t objective_samples = 32;
    std::size_t constraint_samples = 16;
    std::size_t eval_samples = 256;
    std::vector<double> penalty_schedule{1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    std::size_t iterations_per_stage = 60;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

struct RestartResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    /// Constraint violation (amplitude) before the restoration step.
    double penalty_violation = 0.0;
    /// After restoration, on the constraint set and fresh constrained pairs.
    double violation = 0.0;
    double nontriviality = 0.0;
    bool feasible = false;
};

struct SearchResult {
    DecisionMachine best_machine;
    double best_nontriviality = 0.0;
    double achieved_violation = 0.0;
    bool found_feasible = false;
    std::size_t feasible_restarts = 0;
    std::vector<RestartResult> restarts;
};

RestartResult run_restart(const SearchConfig &config, std::size_t index, DecisionMachine *machine_out = nullptr);

/// Deterministic per config.seed; restarts may run in parallel and are
/// reduced by (nontriviality, -index).
SearchResult adversarial_search(const SearchConfig &config);

/// Theorem-consistent threshold on best_nontriviality for anti-linear K.
inline constexpr double kImpossibilityThreshold = 1e-3;

nlohmann::json to_json(const SearchResult &r, const SearchConfig &config);

} // namespace qcompare
