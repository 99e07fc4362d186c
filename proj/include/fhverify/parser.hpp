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

#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fhverify/bit_string.hpp"
#include "fhverify/circuit.hpp"

// Circuit text format, one directive per line, '#' comments, blank lines ignored:
//
//   qubits <n>
//   input <n-character bit string>
//   layer classical
//     x <t>
//     cnot <c> <t>
//     toffoli <c1> <c2> <t>
//     ctoffoli <c1> ... <ck> <t>
//   end
//   layer hadamard <q1> <q2> ...
//   layer qft <q1> <q2> ...      (first listed qubit is most significant)
//   layer iqft <q1> <q2> ...
//
// Two transform layers must be separated by a classical layer; an empty
// 'layer classical' / 'end' block serves as the identity.
//
// Indices are zero-based decimals; qubit 0 is the leftmost input character.

namespace fhv {

enum class ParseErrorKind { Syntax, UnknownDirective, IndexOutOfRange, DuplicateQubit, BadAlternation, MissingHeader };

inline const char *parse_error_kind_name(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Syntax:
            return "syntax";
        case ParseErrorKind::UnknownDirective:
            return "unknown-directive";
        case ParseErrorKind::IndexOutOfRange:
            return "index-out-of-range";
        case ParseErrorKind::DuplicateQubit:
            return "duplicate-qubit";
        case ParseErrorKind::BadAlternation:
            return "bad-alternation";
        case ParseErrorKind::MissingHeader:
            return "missing-header";
    }
    return "?";
}

class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, ParseErrorKind kind, const std::string &message)
        : std::runtime_error(
              "line " + std::to_string(line) + ": " + parse_error_kind_name(kind) + ": " + message),
          line_(line),
          kind_(kind),
          message_(message) {
    }

    size_t line() const {
        return line_;
    }
    ParseErrorKind kind() const {
        return kind_;
    }
    const std::string &message() const {
        return message_;
    }

   private:
    size_t line_;
    ParseErrorKind kind_;
    std::string message_;
};

namespace detail {

class CircuitParser {
   public:
    explicit CircuitParser(std::string_view text) : text_(text) {
    }

    KTransformCircuit run() {
        size_t pos = 0;
        while (pos <= text_.size()) {
            size_t eol = text_.find('\n', pos);
            if (eol == std::string_view::npos) {
                eol = text_.size();
            }
            line_no_++;
            handle_line(text_.substr(pos, eol - pos));
            pos = eol + 1;
        }
        if (in_block_) {
            fail(block_line_, ParseErrorKind::Syntax, "classical layer is missing its 'end'");
        }
        if (!have_qubits_) {
            fail(line_no_, ParseErrorKind::MissingHeader, "missing 'qubits' directive");
        }
        if (!have_input_) {
            fail(line_no_, ParseErrorKind::MissingHeader, "missing 'input' directive");
        }
        try {
            return normalize_circuit(n_, input_, layers_);
        } catch (const StructuralError &e) {
            fail(line_no_, ParseErrorKind::Syntax, e.what());
        }
    }

   private:
    [[noreturn]] static void fail(size_t line, ParseErrorKind kind, const std::string &message) {
        throw ParseError(line, kind, message);
    }
    [[noreturn]] void fail(ParseErrorKind kind, const std::string &message) const {
        fail(line_no_, kind, message);
    }

    static std::vector<std::string_view> tokenize(std::string_view line) {
        std::vector<std::string_view> out;
        size_t i = 0;
        auto is_space = [](char c) {
            return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
        };
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) {
                i++;
            }
            size_t start = i;
            while (i < line.size() && !is_space(line[i])) {
                i++;
            }
            if (i > start) {
                out.push_back(line.substr(start, i - start));
            }
        }
        return out;
    }

    uint32_t index(std::string_view tok) const {
        uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec == std::errc::invalid_argument || ptr != tok.data() + tok.size()) {
            fail(ParseErrorKind::Syntax, "expected a qubit index, got '" + std::string(tok) + "'");
        }
        if (ec == std::errc::result_out_of_range || v >= n_) {
            fail(ParseErrorKind::IndexOutOfRange,
                 "qubit index " + std::string(tok) + " out of range for " + std::to_string(n_) + " qubits");
        }
        return static_cast<uint32_t>(v);
    }

    void handle_line(std::string_view line) {
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto toks = tokenize(line);
        if (toks.empty()) {
            return;
        }
        if (in_block_) {
            handle_gate(toks);
            return;
        }
        std::string_view head = toks[0];
        if (head == "qubits") {
            handle_qubits(toks);
        } else if (head == "input") {
            if (!have_qubits_) {
                fail(ParseErrorKind::MissingHeader, "'input' must follow the 'qubits' directive");
            }
            handle_input(toks);
        } else if (head == "layer") {
            if (!have_qubits_ || !have_input_) {
                fail(ParseErrorKind::MissingHeader, "layers must follow the 'qubits' and 'input' directives");
            }
            handle_layer(toks);
        } else if (head == "end") {
            fail(ParseErrorKind::Syntax, "'end' without an open classical layer");
        } else if (head == "x" || head == "cnot" || head == "toffoli" || head == "ctoffoli") {
            fail(ParseErrorKind::Syntax, "gate '" + std::string(head) + "' outside a classical layer");
        } else {
            fail(ParseErrorKind::UnknownDirective, "unknown directive '" + std::string(head) + "'");
        }
    }

    void handle_qubits(const std::vector<std::string_view> &toks) {
        if (have_qubits_) {
            fail(ParseErrorKind::Syntax, "duplicate 'qubits' directive");
        }
        if (toks.size() != 2) {
            fail(ParseErrorKind::Syntax, "expected 'qubits <n>'");
        }
        uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), v);
        if (ec != std::errc{} || ptr != toks[1].data() + toks[1].size() || v == 0 || v > BitString::kMaxBits) {
            fail(ParseErrorKind::Syntax, "qubit count must be an integer in [1, 64], got '" + std::string(toks[1]) + "'");
        }
        n_ = static_cast<size_t>(v);
        have_qubits_ = true;
    }

    void handle_input(const std::vector<std::string_view> &toks) {
        if (have_input_) {
            fail(ParseErrorKind::Syntax, "duplicate 'input' directive");
        }
        if (toks.size() != 2) {
            fail(ParseErrorKind::Syntax, "expected 'input <bitstring>'");
        }
        if (toks[1].size() != n_ || toks[1].find_first_not_of("01") != std::string_view::npos) {
            fail(ParseErrorKind::Syntax,
                 "input must be exactly " + std::to_string(n_) + " characters of '0'/'1', got '" +
                     std::string(toks[1]) + "'");
        }
        input_ = BitString::from_text(toks[1]);
        have_input_ = true;
    }

    void handle_layer(const std::vector<std::string_view> &toks) {
        if (toks.size() < 2) {
            fail(ParseErrorKind::Syntax, "expected a layer kind after 'layer'");
        }
        std::string_view kind = toks[1];
        if (kind == "classical") {
            if (toks.size() != 2) {
                fail(ParseErrorKind::Syntax, "'layer classical' takes no arguments");
            }
            in_block_ = true;
            block_line_ = line_no_;
            layers_.emplace_back(ClassicalLayer{});
            return;
        }
        TransformLayer f;
        if (kind == "hadamard") {
            f.kind = TransformKind::Hadamard;
        } else if (kind == "qft") {
            f.kind = TransformKind::Qft;
        } else if (kind == "iqft") {
            f.kind = TransformKind::InverseQft;
        } else {
            fail(ParseErrorKind::UnknownDirective, "unknown layer kind '" + std::string(kind) + "'");
        }
        if (toks.size() < 3) {
            fail(ParseErrorKind::Syntax, "transform layer needs at least one qubit");
        }
        uint64_t seen = 0;
        for (size_t i = 2; i < toks.size(); i++) {
            uint32_t q = index(toks[i]);
            if (seen & qubit_mask(n_, q)) {
                fail(ParseErrorKind::DuplicateQubit, "qubit " + std::to_string(q) + " listed twice in transform layer");
            }
            seen |= qubit_mask(n_, q);
            f.support.push_back(q);
        }
        if (last_transform_) {
            fail(ParseErrorKind::BadAlternation,
                 "transform layer directly follows another transform layer; declare them as one layer");
        }
        layers_.emplace_back(std::move(f));
        last_transform_ = true;
    }

    void handle_gate(const std::vector<std::string_view> &toks) {
        std::string_view head = toks[0];
        if (head == "end") {
            if (toks.size() != 1) {
                fail(ParseErrorKind::Syntax, "'end' takes no arguments");
            }
            in_block_ = false;
            last_transform_ = false;
            return;
        }
        size_t operands;
        if (head == "x") {
            operands = 1;
        } else if (head == "cnot") {
            operands = 2;
        } else if (head == "toffoli") {
            operands = 3;
        } else if (head == "ctoffoli") {
            operands = 0;
        } else if (head == "layer") {
            fail(ParseErrorKind::Syntax, "classical layer opened on line " + std::to_string(block_line_) +
                                             " is missing its 'end'");
        } else {
            fail(ParseErrorKind::UnknownDirective, "unknown gate '" + std::string(head) + "'");
        }
        if (operands != 0 && toks.size() != operands + 1) {
            fail(ParseErrorKind::Syntax,
                 "'" + std::string(head) + "' takes " + std::to_string(operands) + " qubit index(es)");
        }
        if (operands == 0 && toks.size() < 2) {
            fail(ParseErrorKind::Syntax, "'ctoffoli' needs at least a target");
        }
        ReversibleGate g;
        for (size_t i = 1; i + 1 < toks.size(); i++) {
            g.controls.push_back(index(toks[i]));
        }
        g.target = index(toks.back());
        try {
            g.validate(n_);
        } catch (const StructuralError &e) {
            fail(ParseErrorKind::DuplicateQubit, e.what());
        }
        std::get<ClassicalLayer>(layers_.back()).gates.push_back(std::move(g));
    }

    std::string_view text_;
    size_t line_no_ = 0;
    size_t n_ = 0;
    bool have_qubits_ = false;
    bool have_input_ = false;
    BitString input_;
    bool in_block_ = false;
    size_t block_line_ = 0;
    bool last_transform_ = false;
    std::vector<Layer> layers_;
};

}  // namespace detail

/// Parses the circuit text format. Throws ParseError with a 1-based line number.
/// Circuits with more than two transform layers parse fine; check k() before verifying.
inline KTransformCircuit parse_circuit(std::string_view text) {
    return detail::CircuitParser(text).run();
}

/// Canonical text form. Empty classical layers are omitted except between two
/// transforms, where an empty block keeps the layers distinct.
inline std::string serialize_circuit(const KTransformCircuit &c) {
    std::ostringstream out;
    out << "qubits " << c.n << "\n";
    out << "input " << c.input.str() << "\n";
    for (const auto &layer : c.layers()) {
        if (const auto *cl = std::get_if<ClassicalLayer>(&layer)) {
            out << "layer classical\n";
            for (const auto &g : cl->gates) {
                switch (g.controls.size()) {
                    case 0:
                        out << "  x";
                        break;
                    case 1:
                        out << "  cnot";
                        break;
                    case 2:
                        out << "  toffoli";
                        break;
                    default:
                        out << "  ctoffoli";
                }
                for (auto q : g.controls) {
                    out << " " << q;
                }
                out << " " << g.target << "\n";
            }
            out << "end\n";
        } else {
            const auto &f = std::get<TransformLayer>(layer);
            out << "layer " << transform_keyword(f.kind);
            for (auto q : f.support) {
                out << " " << q;
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace fhv
