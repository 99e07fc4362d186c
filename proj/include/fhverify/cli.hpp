// Copyright 2026 The fhverify Authors
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

#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fhverify/parser.hpp"
#include "fhverify/simulator.hpp"
#include "fhverify/verifier.hpp"

namespace fhv::cli {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr const char *kReportSchema = "fhverify.run_report";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr uint64_t kDefaultSeed = 42;
inline constexpr double kDefaultConfidence = 0.99;

enum ExitCode : int { kAccept = 0, kReject = 1, kUsageError = 2, kPromiseViolation = 3 };

using Json = nlohmann::ordered_json;

/// FNV-1a over the canonical serialization, so formatting and comments do not change it.
inline std::string circuit_digest(const KTransformCircuit &c) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_circuit(c)) {
        h = (h ^ ch) * 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

inline const char *decision_name(Decision d) {
    return d == Decision::Accept ? "accept" : "reject";
}

inline const char *sample_source_name(SampleSource s) {
    switch (s) {
        case SampleSource::None:
            return "none";
        case SampleSource::Hoeffding:
            return "hoeffding";
        case SampleSource::Explicit:
            return "explicit";
    }
    return "?";
}

inline Json verdict_json(const VerdictReport &v, const BitString &outcome) {
    Json j;
    j["decision"] = decision_name(v.decision);
    j["outcome"] = outcome.str();
    j["k"] = v.k;
    j["A_hat"] = v.a_hat;
    j["B_hat"] = v.b_hat;
    j["theta"] = v.theta;
    j["samples"] = v.samples;
    j["sample_source"] = sample_source_name(v.sample_source);
    j["seed"] = v.seed;
    j["failure_bound"] = v.failure_bound;
    j["mirrored"] = v.mirrored;
    j["exact_probability"] = v.exact_probability ? Json(*v.exact_probability) : Json(nullptr);
    j["gamma"] = v.gamma;
    if (v.rescaled) {
        j["rescaled"] = {
            {"a", v.rescaled->a},
            {"b", v.rescaled->b},
            {"delta_prime", v.rescaled->delta_prime},
            {"epsilon_prime", v.rescaled->epsilon_prime},
            {"gamma_prime", v.rescaled->gamma_prime},
            {"theta", v.rescaled->theta},
        };
    } else {
        j["rescaled"] = nullptr;
    }
    j["trivial_reject"] = v.trivial_reject;
    j["promise_violation"] = v.promise_violation;
    j["diagnostic"] = v.diagnostic;
    return j;
}

inline Json histogram_json(const OutcomeHistogram &h) {
    Json counts = Json::object();
    for (const auto &[s, n] : h.counts) {
        counts[s.str()] = n;
    }
    return {{"shots", h.shots}, {"counts", counts}, {"modal_outcome", h.modal().str()}};
}

inline int verdict_exit_code(const VerdictReport &v) {
    if (v.accepted()) {
        return kAccept;
    }
    return v.promise_violation ? kPromiseViolation : kReject;
}

namespace detail {

struct CircuitFlags {
    std::string path;
    std::string input_override;
};

struct PromiseFlags {
    std::optional<double> delta;
    std::optional<double> epsilon;
    double confidence = kDefaultConfidence;
    std::optional<uint64_t> samples;
    uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
};

inline void add_circuit_flags(CLI::App *cmd, CircuitFlags &f) {
    cmd->add_option("--circuit", f.path, "Circuit description file")->required();
    cmd->add_option("--input", f.input_override, "Override the circuit's input bit string");
}

inline void add_promise_flags(CLI::App *cmd, PromiseFlags &f) {
    cmd->add_option("--delta", f.delta, "Yes-instance probability threshold (required for k >= 1)");
    cmd->add_option("--epsilon", f.epsilon, "No-instance probability threshold (required for k >= 1)");
    cmd->add_option("--confidence", f.confidence, "Target success probability p")->capture_default_str();
    cmd->add_option("--samples", f.samples, "Explicit sample count; overrides the Hoeffding count");
    cmd->add_option("--seed", f.seed, "Master seed for all randomness")->capture_default_str();
    cmd->add_option("--threads", f.threads, "Sampling worker threads; never changes reported numbers")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1024u));
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline KTransformCircuit load_circuit(const CircuitFlags &f) {
    std::ifstream in(f.path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read circuit file '" + f.path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    KTransformCircuit c = parse_circuit(buf.str());
    if (!f.input_override.empty()) {
        BitString in_override = BitString::from_text(f.input_override);
        if (in_override.size() != c.n) {
            throw UsageError(
                "--input has length " + std::to_string(in_override.size()) + " but circuit has " +
                std::to_string(c.n) + " qubits");
        }
        c.input = in_override;
    }
    return c;
}

inline BitString parse_outcome(const std::string &text, const KTransformCircuit &c) {
    BitString s = BitString::from_text(text);
    if (s.size() != c.n) {
        throw UsageError(
            "--outcome has length " + std::to_string(s.size()) + " but circuit has " + std::to_string(c.n) + " qubits");
    }
    return s;
}

inline PromiseParams promise_params(const PromiseFlags &f, const KTransformCircuit &c) {
    if (c.k() > 2) {
        throw UsageError(
            "classical verification supports at most two transform layers; this circuit has k=" +
            std::to_string(c.k()));
    }
    PromiseParams p;
    if (c.k() >= 1) {
        if (!f.delta || !f.epsilon) {
            throw UsageError("--delta and --epsilon are required for circuits with transform layers");
        }
    }
    p.delta = f.delta.value_or(p.delta);
    p.epsilon = f.epsilon.value_or(p.epsilon);
    p.confidence = f.confidence;
    p.samples = f.samples;
    if (c.k() >= 1) {
        p.validate();
    }
    return p;
}

inline Json circuit_json(const CircuitFlags &f, const KTransformCircuit &c) {
    return {
        {"path", f.path},
        {"digest", circuit_digest(c)},
        {"qubits", c.n},
        {"k", c.k()},
        {"input", c.input.str()},
    };
}

inline Json parameters_json(const PromiseFlags &f) {
    return {
        {"delta", f.delta ? Json(*f.delta) : Json(nullptr)},
        {"epsilon", f.epsilon ? Json(*f.epsilon) : Json(nullptr)},
        {"confidence", f.confidence},
        {"samples", f.samples ? Json(*f.samples) : Json(nullptr)},
        {"seed", f.seed},
    };
}

/// Arguments echoed into the report; the worker count is dropped since it cannot change any number.
inline Json command_echo(const std::vector<std::string> &args) {
    Json out = Json::array();
    for (size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--threads") {
            i++;
            continue;
        }
        if (args[i].rfind("--threads=", 0) == 0) {
            continue;
        }
        out.push_back(args[i]);
    }
    return out;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. The JSON run report goes
/// to `out`, diagnostics to `err`. Returns 0 accept, 1 reject, 2 usage/parse error,
/// 3 promise-violation reject. Non-verifying commands return 0 on success.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    auto started = std::chrono::steady_clock::now();

    CLI::App app{"Classical verification of quantum circuits with at most two Fourier-type layers", "fhverify"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    detail::CircuitFlags circuit_flags;
    detail::PromiseFlags promise_flags;
    std::string outcome;
    uint64_t shots = 1;
    std::string method = "dense";

    auto *verify_cmd = app.add_subcommand("verify", "Decide whether a claimed outcome is a likely result of the circuit");
    detail::add_circuit_flags(verify_cmd, circuit_flags);
    verify_cmd->add_option("--outcome", outcome, "Claimed measurement outcome")->required();
    detail::add_promise_flags(verify_cmd, promise_flags);

    auto *prove_cmd = app.add_subcommand("prove", "Sample outcomes from the dense simulator (honest prover)");
    detail::add_circuit_flags(prove_cmd, circuit_flags);
    prove_cmd->add_option("--shots", shots, "Number of measurement shots")->capture_default_str()->check(
        CLI::PositiveNumber);
    prove_cmd->add_option("--seed", promise_flags.seed, "Master seed")->capture_default_str();

    auto *amp_cmd = app.add_subcommand("amplitude", "Exact amplitude and probability of an outcome");
    detail::add_circuit_flags(amp_cmd, circuit_flags);
    amp_cmd->add_option("--outcome", outcome, "Measurement outcome")->required();
    amp_cmd->add_option("--method", method, "Exact oracle to use")
        ->capture_default_str()
        ->check(CLI::IsMember({"dense", "pathsum"}));

    auto *witness_cmd = app.add_subcommand("witness", "Find the modal outcome with the honest prover, then verify it");
    detail::add_circuit_flags(witness_cmd, circuit_flags);
    witness_cmd->add_option("--shots", shots, "Number of prover shots")->capture_default_str()->check(
        CLI::PositiveNumber);
    detail::add_promise_flags(witness_cmd, promise_flags);

    std::vector<std::string> argv_storage{"fhverify"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_storage) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }

    Json report;
    report["schema"] = kReportSchema;
    report["schema_version"] = kReportSchemaVersion;
    report["tool_version"] = kToolVersion;
    report["command"] = detail::command_echo(args);

    int exit_code = kUsageError;
    try {
        KTransformCircuit circuit = detail::load_circuit(circuit_flags);
        report["circuit"] = detail::circuit_json(circuit_flags, circuit);
        if (verify_cmd->parsed()) {
            BitString s = detail::parse_outcome(outcome, circuit);
            PromiseParams params = detail::promise_params(promise_flags, circuit);
            report["parameters"] = detail::parameters_json(promise_flags);
            VerdictReport v = verify(circuit, s, params, promise_flags.seed, promise_flags.threads);
            report["verdict"] = verdict_json(v, s);
            exit_code = verdict_exit_code(v);
        } else if (prove_cmd->parsed()) {
            report["parameters"] = {{"shots", shots}, {"seed", promise_flags.seed}};
            report["histogram"] = histogram_json(prove(circuit, shots, promise_flags.seed));
            exit_code = 0;
        } else if (amp_cmd->parsed()) {
            BitString s = detail::parse_outcome(outcome, circuit);
            if (method == "pathsum" && circuit.k() != 2) {
                throw detail::UsageError(
                    "--method pathsum needs exactly two transform layers; circuit has k=" + std::to_string(circuit.k()));
            }
            auto amp = method == "dense" ? exact_amplitude_dense(circuit, s) : exact_amplitude_pathsum(circuit, s);
            report["parameters"] = {{"method", method}};
            report["amplitude"] = {
                {"outcome", s.str()},
                {"re", amp.real()},
                {"im", amp.imag()},
                {"probability", std::norm(amp)},
            };
            exit_code = 0;
        } else if (witness_cmd->parsed()) {
            PromiseParams params = detail::promise_params(promise_flags, circuit);
            report["parameters"] = detail::parameters_json(promise_flags);
            report["parameters"]["shots"] = shots;
            OutcomeHistogram hist = prove(circuit, shots, promise_flags.seed);
            BitString witness = hist.modal();
            report["witness"] = histogram_json(hist);
            VerdictReport v = verify(circuit, witness, params, promise_flags.seed, promise_flags.threads);
            report["verdict"] = verdict_json(v, witness);
            exit_code = verdict_exit_code(v);
        }
        report["status"] = "ok";
    } catch (const ParseError &e) {
        report["status"] = "error";
        report["error"] = {
            {"kind", "parse"},
            {"line", e.line()},
            {"parse_kind", parse_error_kind_name(e.kind())},
            {"message", e.message()},
        };
        err << "fhverify: " << circuit_flags.path << ":" << e.what() << "\n";
    } catch (const std::exception &e) {
        report["status"] = "error";
        report["error"] = {{"kind", "usage"}, {"message", e.what()}};
        err << "fhverify: " << e.what() << "\n";
    }
    report["exit_code"] = exit_code;
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    report["timing"] = {{"elapsed_ms", elapsed.count()}};
    out << report.dump(2) << "\n";
    return exit_code;
}

}  // namespace fhv::cli
