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

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "qcompare/cloning.hpp"
#include "qcompare/literal.hpp"
#include "qcompare/machines.hpp"
#include "qcompare/search.hpp"
#include "qcompare/verifier.hpp"

namespace qcompare::cli {

namespace {

struct Common {
    std::uint64_t seed = 0;
    std::string out_path;
    int indent = 2;
    double norm_tol = 1e-4;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "@path" reads the literal from a file.
std::string literal_text(const std::string &arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

// Literals such as [[0.7071,0],[0,0.7071]] are accepted within norm_tol and
// then renormalized.
StateVector parse_state(const std::string &arg, double norm_tol) {
    StateVector s = parse_state_literal(literal_text(arg));
    if (std::abs(s.norm() - 1.0) > norm_tol) {
        throw NormalizationError("state " + arg + " has norm " + std::to_string(s.norm()));
    }
    return s.normalized();
}

Operator parse_matrix(const std::string &arg) {
    if (arg == "I") {
        return Operator::identity(2);
    }
    if (arg == "X") {
        return gates::pauli_x();
    }
    if (arg == "H") {
        return gates::hadamard();
    }
    if (arg == "orth") {
        return AntiLinearMap::orthogonal_complement().linear_part();
    }
    return parse_matrix_literal(literal_text(arg));
}

KMap make_k(const std::string &arg, bool antilinear) {
    Operator m = parse_matrix(arg);
    if (antilinear) {
        return AntiLinearMap(std::move(m));
    }
    return m;
}

DecisionMachine load_machine(const std::string &name, const KMap &k) {
    const std::size_t d = map_dim(k);
    if (name == "swap") {
        return build_swap_test_machine(d);
    }
    if (name == "always-yes") {
        return build_constant_machine(true, d, d);
    }
    if (name == "always-no") {
        return build_constant_machine(false, d, d);
    }
    if (name == "compare") {
        if (is_antilinear(k)) {
            throw Error("the compare machine needs a linear (unitary) K");
        }
        return build_k_comparison_machine(std::get<Operator>(k));
    }
    try {
        return machine_from_json(nlohmann::json::parse(read_file(name)));
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("machine file is not JSON: ") + e.what());
    }
}

Cloner load_cloner(const std::string &name) {
    if (name == "universal") {
        return universal_cloner();
    }
    if (name == "trivial") {
        return trivial_cloner();
    }
    try {
        return cloner_from_json(nlohmann::json::parse(read_file(name)));
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("cloner file is not JSON: ") + e.what());
    }
}

void emit(const nlohmann::json &j, const Common &common, std::ostream &out) {
    const std::string text = j.dump(common.indent) + "\n";
    out << text;
    if (!common.out_path.empty()) {
        std::ofstream file(common.out_path);
        if (!file) {
            throw ParseError("cannot write " + common.out_path);
        }
        file << text;
    }
}

void add_common(CLI::App *sub, Common &common) {
    sub->add_option("--seed", common.seed, "Root seed")->default_val(0);
    sub->add_option("--out", common.out_path, "Also write the JSON result to this file");
    sub->add_option("--json-indent", common.indent, "JSON indentation (-1 for compact)")->default_val(2);
    sub->add_option("--norm-tol", common.norm_tol, "Accepted |norm - 1| for state literals")->default_val(1e-4);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum comparison machines with one-sided error", "qcompare"};
    app.require_subcommand(1);
    Common common;

    std::string a_arg, b_arg, k_arg = "I", machine_arg, cloner_arg = "universal", state_arg;
    int case_id = 2, clone_index = 1;
    bool antilinear = false, linear = false, exact = false;
    std::size_t samples = 1000, budget = 50, sample_rounds = 0;
    double tol = kClassifyTol, epsilon = 1e-6;
    Dims ancilla{2, 2};
    Dims verify_ancilla{2};
    unsigned threads = 0;
    std::string save_machine;

    auto *swap = app.add_subcommand("swap-test", "SWAP-test acceptance probability, formula and circuit");
    swap->add_option("--a", a_arg, "First state literal")->required();
    swap->add_option("--b", b_arg, "Second state literal")->required();
    add_common(swap, common);

    auto *compare = app.add_subcommand("compare", "Test psi == K phi for a unitary K");
    compare->add_option("--k", k_arg, "Unitary K: literal, @file, I, X or H")->required();
    compare->add_option("--a", a_arg, "phi")->required();
    compare->add_option("--b", b_arg, "psi")->required();
    add_common(compare, common);

    auto *classify = app.add_subcommand("classify", "Sample-based one-sidedness classification");
    classify->add_option("--machine", machine_arg, "swap, always-yes, always-no, compare or a machine JSON file")
        ->required();
    classify->add_option("--k", k_arg, "K matrix");
    classify->add_flag("--antilinear", antilinear, "K is A composed with conjugation");
    classify->add_option("--samples", samples)->default_val(1000);
    classify->add_option("--tol", tol)->default_val(kClassifyTol);
    add_common(classify, common);

    auto *verify = app.add_subcommand("verify", "Check one case of the impossibility argument");
    verify->add_option("--k", k_arg, "Linear part of K (anti-linear unless --linear)")->required();
    verify->add_option("--case", case_id)->required()->check(CLI::IsMember({1, 2}));
    auto *verify_machine = verify->add_option("--machine", machine_arg, "Built-in name or machine JSON file");
    auto *verify_exact = verify->add_flag("--exact-construction", exact, "Use an exactly constrained machine");
    verify_machine->excludes(verify_exact);
    verify->add_flag("--linear", linear, "Treat K as a linear map (control experiment)");
    verify->add_option("--ancilla", verify_ancilla, "Ancilla dims for --exact-construction")->delimiter(',');
    add_common(verify, common);

    auto *search = app.add_subcommand("search", "Adversarial search for a non-trivial one-sided machine");
    search->add_option("--k", k_arg, "K matrix")->required();
    search->add_flag("--antilinear", antilinear, "K is A composed with conjugation");
    search->add_option("--case", case_id)->required()->check(CLI::IsMember({1, 2}));
    search->add_option("--epsilon", epsilon)->default_val(1e-6);
    search->add_option("--budget", budget, "Restarts")->default_val(50)->check(CLI::PositiveNumber);
    search->add_option("--ancilla", ancilla, "Ancilla dims, e.g. 2,2")->delimiter(',');
    search->add_option("--threads", threads, "Worker threads (0 = all cores)")->default_val(0);
    search->add_option("--save-machine", save_machine, "Write the best machine as JSON");
    add_common(search, common);

    auto *game = app.add_subcommand("cloning-game", "SWAP-test scored cloning game");
    game->add_option("--cloner", cloner_arg, "universal, trivial or a cloner JSON file")->default_val("universal");
    game->add_option("--state", state_arg, "Input state literal")->required();
    game->add_option("--clone", clone_index)->default_val(1)->check(CLI::IsMember({1, 2}));
    game->add_option("--sample", sample_rounds, "Also play this many sampled rounds");
    add_common(game, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (swap->parsed()) {
            const StateVector a = parse_state(a_arg, common.norm_tol);
            const StateVector b = parse_state(b_arg, common.norm_tol);
            if (a.size() != b.size()) {
                throw DimensionError("states have different dimensions");
            }
            const double formula = swap_test_probability(a, b);
            const double circuit = evaluate(build_swap_test_machine(std::max<std::size_t>(a.size(), 2)), a, b).p_yes;
            emit({{"delta", std::abs(inner(a, b))},
                  {"p_yes_formula", formula},
                  {"p_yes_circuit", circuit},
                  {"max_abs_diff", std::abs(formula - circuit)}},
                 common, out);
        } else if (compare->parsed()) {
            const Operator k = parse_matrix(k_arg);
            const StateVector a = parse_state(a_arg, common.norm_tol);
            const StateVector b = parse_state(b_arg, common.norm_tol);
            const auto outcome = evaluate(build_k_comparison_machine(k), a, b);
            const StateVector image = apply(k, a);
            emit({{"delta", std::abs(inner(image, b))},
                  {"p_yes_formula", swap_test_probability(image, b)},
                  {"p_yes_circuit", outcome.p_yes},
                  {"p_no", outcome.p_no},
                  {"matched", is_matched(k, a, b)}},
                 common, out);
        } else if (classify->parsed()) {
            const KMap k = make_k(k_arg, antilinear);
            const auto c =
                classify_one_sidedness(load_machine(machine_arg, k), k, samples, common.seed, tol);
            nlohmann::json j = to_json(c);
            j["samples"] = samples;
            j["seed"] = common.seed;
            emit(j, common, out);
        } else if (verify->parsed()) {
            const KMap k = make_k(k_arg, !linear);
            if (!exact && machine_arg.empty()) {
                throw Error("verify needs --machine or --exact-construction");
            }
            const DecisionMachine machine = exact
                                                ? build_exactly_constrained_machine(k, case_id, verify_ancilla, common.seed)
                                                : load_machine(machine_arg, k);
            emit(to_json(verify_case(machine, k, case_id)), common, out);
        } else if (search->parsed()) {
            SearchConfig config;
            config.k = make_k(k_arg, antilinear);
            config.case_id = case_id;
            config.epsilon = epsilon;
            config.budget = budget;
            config.seed = common.seed;
            config.ancilla_dims = ancilla;
            config.threads = threads;
            const SearchResult result = adversarial_search(config);
            const nlohmann::json j = to_json(result, config);
            emit(j, common, out);
            if (!save_machine.empty()) {
                std::ofstream file(save_machine);
                file << to_json(result.best_machine).dump(common.indent) << "\n";
            }
            if (!j.at("threshold_held").get<bool>()) {
                err << "best non-triviality exceeds the impossibility threshold";
                if (!j.at("k_nonsingular").get<bool>()) {
                    err << " (K is singular, outside the theorem's hypothesis)";
                }
                err << "\n";
                return kExitThreshold;
            }
        } else if (game->parsed()) {
            const Cloner cloner = load_cloner(cloner_arg);
            const StateVector psi = parse_state(state_arg, common.norm_tol);
            nlohmann::json j = to_json(run_game(cloner, psi, clone_index));
            j["clone"] = clone_index;
            if (sample_rounds > 0) {
                j["sampled_rounds"] = sample_rounds;
                j["empirical_payoff"] = sample_game(cloner, psi, clone_index, sample_rounds, common.seed);
            }
            emit(j, common, out);
        }
    } catch (const qcompare::Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace qcompare::cli
