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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fhverify/bit_string.hpp"
#include "fhverify/errors.hpp"

namespace fhv {

/// Generalized Toffoli: flips `target` iff every control qubit is 1.
/// Zero controls is a NOT gate, one control a CNOT.
struct ReversibleGate {
    std::vector<uint32_t> controls;
    uint32_t target = 0;

    static ReversibleGate x(uint32_t t) {
        return {{}, t};
    }
    static ReversibleGate cnot(uint32_t c, uint32_t t) {
        return {{c}, t};
    }
    static ReversibleGate toffoli(uint32_t c1, uint32_t c2, uint32_t t) {
        return {{c1, c2}, t};
    }

    /// Throws StructuralError unless every index is < n, controls are distinct,
    /// and the target is not a control.
    void validate(size_t n) const {
        auto fail = [&](const std::string &why) {
            throw StructuralError("invalid gate on " + std::to_string(n) + " qubits: " + why);
        };
        if (target >= n) {
            fail("target " + std::to_string(target) + " out of range");
        }
        for (size_t i = 0; i < controls.size(); i++) {
            if (controls[i] >= n) {
                fail("control " + std::to_string(controls[i]) + " out of range");
            }
            if (controls[i] == target) {
                fail("qubit " + std::to_string(target) + " is both control and target");
            }
            for (size_t j = 0; j < i; j++) {
                if (controls[j] == controls[i]) {
                    fail("duplicate control " + std::to_string(controls[i]));
                }
            }
        }
    }

    bool operator==(const ReversibleGate &) const = default;
};

/// A reversible classical layer: gates applied in list order.
struct ClassicalLayer {
    std::vector<ReversibleGate> gates;

    bool empty() const {
        return gates.empty();
    }
    void validate(size_t n) const {
        for (const auto &g : gates) {
            g.validate(n);
        }
    }

    /// The inverse permutation: same gates in reverse order.
    ClassicalLayer inverse() const {
        return {{gates.rbegin(), gates.rend()}};
    }

    bool operator==(const ClassicalLayer &) const = default;
};

enum class TransformKind { Hadamard, Qft, InverseQft };

inline const char *transform_keyword(TransformKind kind) {
    switch (kind) {
        case TransformKind::Hadamard:
            return "hadamard";
        case TransformKind::Qft:
            return "qft";
        case TransformKind::InverseQft:
            return "iqft";
    }
    return "?";
}

/// A basis-changing layer acting on an ordered list of support qubits.
/// For QFT registers the first listed qubit is the most significant.
struct TransformLayer {
    TransformKind kind = TransformKind::Hadamard;
    std::vector<uint32_t> support;

    size_t m() const {
        return support.size();
    }

    uint64_t support_mask(size_t n) const {
        uint64_t mask = 0;
        for (auto q : support) {
            mask |= qubit_mask(n, q);
        }
        return mask;
    }

    void validate(size_t n) const {
        if (support.empty()) {
            throw StructuralError("transform layer needs a nonempty support");
        }
        uint64_t seen = 0;
        for (auto q : support) {
            if (q >= n) {
                throw StructuralError(
                    "transform support qubit " + std::to_string(q) + " out of range for " + std::to_string(n) +
                    " qubits");
            }
            if (seen & qubit_mask(n, q)) {
                throw StructuralError("duplicate qubit " + std::to_string(q) + " in transform support");
            }
            seen |= qubit_mask(n, q);
        }
    }

    bool operator==(const TransformLayer &) const = default;
};

/// A classical layer lowered to (control mask, target mask) pairs for a fixed register size.
class CompiledLayer {
   public:
    CompiledLayer() = default;
    CompiledLayer(const ClassicalLayer &layer, size_t n) : n_(n) {
        layer.validate(n);
        ops_.reserve(layer.gates.size());
        for (const auto &g : layer.gates) {
            uint64_t controls = 0;
            for (auto c : g.controls) {
                controls |= qubit_mask(n, c);
            }
            ops_.push_back({controls, qubit_mask(n, g.target)});
        }
    }

    uint64_t apply(uint64_t word) const {
        for (const auto &op : ops_) {
            if ((word & op.controls) == op.controls) {
                word ^= op.target;
            }
        }
        return word;
    }

    uint64_t apply_inverse(uint64_t word) const {
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
            if ((word & it->controls) == it->controls) {
                word ^= it->target;
            }
        }
        return word;
    }

    BitString apply(const BitString &s) const {
        check(s);
        return BitString(n_, apply(s.word()));
    }
    BitString apply_inverse(const BitString &s) const {
        check(s);
        return BitString(n_, apply_inverse(s.word()));
    }

    struct Op {
        uint64_t controls;
        uint64_t target;
    };
    std::span<const Op> ops() const {
        return ops_;
    }

   private:
    void check(const BitString &s) const {
        if (s.size() != n_) {
            throw StructuralError(
                "bit string of length " + std::to_string(s.size()) + " applied to " + std::to_string(n_) +
                "-qubit layer");
        }
    }

    size_t n_ = 0;
    std::vector<Op> ops_;
};

inline BitString apply_gate(const ReversibleGate &g, const BitString &s) {
    return CompiledLayer(ClassicalLayer{{g}}, s.size()).apply(s);
}

inline BitString apply_classical(const ClassicalLayer &c, const BitString &s) {
    return CompiledLayer(c, s.size()).apply(s);
}

inline BitString invert_classical(const ClassicalLayer &c, const BitString &s) {
    return CompiledLayer(c, s.size()).apply_inverse(s);
}

using Layer = std::variant<ClassicalLayer, TransformLayer>;

/// Computational-basis input followed by C1, F1, C2, ..., Fk, C(k+1).
///
/// Always stored in normalized form: `classical.size() == transforms.size() + 1`,
/// with empty classical layers standing for the identity.
struct KTransformCircuit {
    size_t n = 0;
    BitString input;
    std::vector<ClassicalLayer> classical{ClassicalLayer{}};
    std::vector<TransformLayer> transforms;

    size_t k() const {
        return transforms.size();
    }

    /// The layer sequence with empty leading and trailing classical layers dropped.
    /// Empty layers between two transforms are kept, since they mark the boundary.
    std::vector<Layer> layers() const {
        std::vector<Layer> out;
        for (size_t i = 0; i < classical.size(); i++) {
            bool between = i > 0 && i < transforms.size();
            if (!classical[i].empty() || between) {
                out.emplace_back(classical[i]);
            }
            if (i < transforms.size()) {
                out.emplace_back(transforms[i]);
            }
        }
        return out;
    }

    bool operator==(const KTransformCircuit &) const = default;
};

/// Builds the alternating form: adjacent classical layers are concatenated and
/// empty classical layers are inserted at the ends. Two transform layers with no
/// classical layer (possibly empty) between them are rejected rather than merged,
/// since merging would change k.
inline KTransformCircuit normalize_circuit(size_t n, const BitString &input, std::span<const Layer> raw) {
    if (n == 0 || n > BitString::kMaxBits) {
        throw StructuralError("qubit count must be in [1, 64], got " + std::to_string(n));
    }
    if (input.size() != n) {
        throw StructuralError(
            "input has length " + std::to_string(input.size()) + " but circuit has " + std::to_string(n) + " qubits");
    }
    KTransformCircuit out;
    out.n = n;
    out.input = input;
    bool last_was_transform = false;
    for (const auto &layer : raw) {
        if (const auto *c = std::get_if<ClassicalLayer>(&layer)) {
            c->validate(n);
            auto &dst = out.classical.back().gates;
            dst.insert(dst.end(), c->gates.begin(), c->gates.end());
            last_was_transform = false;
        } else {
            const auto &f = std::get<TransformLayer>(layer);
            f.validate(n);
            if (last_was_transform) {
                throw StructuralError(
                    "two adjacent transform layers; declare them as a single transform layer instead");
            }
            out.transforms.push_back(f);
            out.classical.emplace_back();
            last_was_transform = true;
        }
    }
    return out;
}

inline KTransformCircuit normalize_circuit(const KTransformCircuit &c) {
    auto raw = c.layers();
    return normalize_circuit(c.n, c.input, raw);
}

}  // namespace fhv
