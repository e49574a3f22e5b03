// Copyright 2026 The bellq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bellq/bellq.hpp"
#include "bellq/io.hpp"

namespace {

using bellq::io::json;

// Exit codes are part of the command-line contract.
constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSize = 4;

struct Options {
    std::string state_path;
    std::string sweep_path;
    std::string out_path;
    std::vector<int> keep;
    std::uint64_t seed = 0;
    int starts = 32;
    double tolerance = 1e-9;
    double theorem_tol = 1e-4;
    double lambda_plus = 1.0 / std::numbers::sqrt2;
    int delta = 0;
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bellq::ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw bellq::ParseError("invalid JSON in '" + path + "': " + e.what());
    }
}

bellq::StateVector load_state(const Options& opt) {
    if (opt.state_path.empty()) throw bellq::ParseError("--state is required");
    return bellq::io::state_from_json(read_json(opt.state_path));
}

bellq::OptimizerConfig optimizer(const Options& opt) {
    bellq::OptimizerConfig cfg;
    cfg.seed = opt.seed;
    cfg.starts = opt.starts;
    cfg.tolerance = opt.tolerance;
    return cfg;
}

void emit(const json& j, const Options& opt) {
    const std::string text = j.dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw bellq::ParseError("cannot write '" + opt.out_path + "'");
    out << text;
}

json subsystem_json(const bellq::Bipartition& split) { return split.subsystem_a(); }

int cmd_rmat(const Options& opt) {
    emit(bellq::io::tensor_to_json(bellq::correlation_tensor(load_state(opt))), opt);
    return kExitOk;
}

int cmd_bound(const Options& opt) {
    const auto r = bellq::correlation_tensor(load_state(opt));
    const auto s = bellq::gram_spectrum(r);
    emit({{"bound", bellq::lemma_bound(r)}, {"spectrum", {s[0], s[1], s[2]}}}, opt);
    return kExitOk;
}

int cmd_maximize(const Options& opt) {
    const auto state = load_state(opt);
    const auto r = bellq::correlation_tensor(state);
    const auto cfg = optimizer(opt);
    const auto full = bellq::maximize(r, cfg);
    const auto restricted = bellq::maximize_restricted(r, cfg);
    emit({{"gamma_hat", full.gamma_hat},
          {"converged", full.converged},
          {"lemma_bound", bellq::lemma_bound(r)},
          {"tsirelson_bound", bellq::tsirelson_bound(state.num_qubits())},
          {"gamma_restricted", restricted.gamma_hat},
          {"restricted_converged", restricted.converged},
          {"settings", bellq::io::full_settings_to_json(full.argmax)},
          {"restricted_settings", bellq::io::settings_to_json(restricted.argmax)}},
         opt);
    return kExitOk;
}

int cmd_concurrence(const Options& opt) {
    const auto state = load_state(opt);
    const int n = state.num_qubits();
    const auto split = bellq::Bipartition::make(n, opt.keep.empty() ? std::vector<int>{n} : opt.keep);
    json out{{"subsystem_a", subsystem_json(split)}};
    if (opt.delta != 0) {
        out["delta"] = opt.delta;
        out["C"] = bellq::generalized_concurrence(state, split, opt.delta);
    } else {
        out["C"] = bellq::concurrence_pure(state, split);
    }
    emit(out, opt);
    return kExitOk;
}

int cmd_entropy(const Options& opt) {
    const auto state = load_state(opt);
    if (opt.keep.empty()) throw bellq::ParseError("--keep is required");
    const auto split = bellq::Bipartition::make(state.num_qubits(), opt.keep);
    emit({{"S", bellq::von_neumann_entropy(bellq::partial_trace(state, split.subsystem_a()))},
          {"subsystem_a", subsystem_json(split)}},
         opt);
    return kExitOk;
}

int cmd_verify_theorem(const Options& opt, const CLI::App& sub) {
    bellq::TheoremConfig cfg;
    cfg.optimizer = optimizer(opt);
    cfg.theorem_tol = opt.theorem_tol;
    std::vector<bellq::FamilySpec> specs;
    if (opt.sweep_path.empty()) {
        specs = bellq::family_sweep({2, 3, 4, 5}, 1, {0.3, 0.6, 0.9});
    } else {
        auto sweep = bellq::io::sweep_from_json(read_json(opt.sweep_path));
        specs = std::move(sweep.specs);
        if (sweep.optimizer) {
            bellq::io::apply_config(*sweep.optimizer, cfg);
            // Explicit flags win over the file.
            if (sub.count("--seed")) cfg.optimizer.seed = opt.seed;
            if (sub.count("--starts")) cfg.optimizer.starts = opt.starts;
            if (sub.count("--tol")) cfg.optimizer.tolerance = opt.tolerance;
            if (sub.count("--theorem-tol")) cfg.theorem_tol = opt.theorem_tol;
        }
    }
    json out = json::array();
    bool all_pass = true;
    for (const auto& spec : specs) {
        const auto report = bellq::verify(spec, cfg);
        all_pass = all_pass && report.pass;
        out.push_back(bellq::io::report_to_json(report));
    }
    emit(out, opt);
    return all_pass ? kExitOk : kExitFailedCheck;
}

int cmd_wen(const Options& opt) {
    if (!(opt.lambda_plus >= 0.0 && opt.lambda_plus <= 1.0)) throw bellq::ParseError("--lambda-plus must lie in [0, 1]");
    const auto report = bellq::wen_report(opt.lambda_plus);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    emit(bellq::io::wen_report_to_json(report), opt);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-inequality violation and entanglement toolkit for pure qubit states"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_state) {
        auto* state = sub->add_option("--state", opt.state_path, "State JSON file");
        if (needs_state) state->required();
        sub->add_option("--out", opt.out_path, "Write the JSON report here instead of stdout");
    };
    auto add_optimizer = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "Random seed");
        sub->add_option("--starts", opt.starts, "Optimizer starts")->check(CLI::PositiveNumber);
        sub->add_option("--tol", opt.tolerance, "Per-sweep convergence threshold")->check(CLI::PositiveNumber);
    };

    auto* rmat = app.add_subcommand("rmat", "Correlation tensor R (3^(n-1) x 3)");
    add_common(rmat, true);
    auto* bound = app.add_subcommand("bound", "Spectral upper bound 2 sqrt(u1^2 + u2^2)");
    add_common(bound, true);
    auto* maximize = app.add_subcommand("maximize", "Numerical maximum violation");
    add_common(maximize, true);
    add_optimizer(maximize);
    auto* concurrence = app.add_subcommand("concurrence", "Pure-state concurrence");
    add_common(concurrence, true);
    concurrence->add_option("--keep", opt.keep, "Subsystem A qubits (default: last qubit)")->delimiter(',');
    concurrence->add_option("--delta", opt.delta, "Use the generalized form with case indicator 1 or 2");
    auto* entropy = app.add_subcommand("entropy", "Entanglement entropy of a subsystem (nats)");
    add_common(entropy, true);
    entropy->add_option("--keep", opt.keep, "Subsystem A qubits")->delimiter(',')->required();
    auto* verify = app.add_subcommand("verify-theorem", "Closed-form maximum violation checks over a family sweep");
    add_common(verify, false);
    verify->add_option("--sweep", opt.sweep_path, "Sweep JSON file (default: built-in sweep)");
    add_optimizer(verify);
    verify->add_option("--theorem-tol", opt.theorem_tol, "Allowed |gamma_hat - 2 f_alpha|")->check(CLI::PositiveNumber);
    auto* wen = app.add_subcommand("wen", "Six-qubit plaquette-model entropy and topological entropy report");
    wen->add_option("--lambda-plus", opt.lambda_plus, "Branch weight in [0, 1]");
    wen->add_option("--out", opt.out_path, "Write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*rmat) return cmd_rmat(opt);
        if (*bound) return cmd_bound(opt);
        if (*maximize) return cmd_maximize(opt);
        if (*concurrence) return cmd_concurrence(opt);
        if (*entropy) return cmd_entropy(opt);
        if (*verify) return cmd_verify_theorem(opt, *verify);
        if (*wen) return cmd_wen(opt);
    } catch (const bellq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const bellq::SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSize;
    } catch (const bellq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitParse;
}
