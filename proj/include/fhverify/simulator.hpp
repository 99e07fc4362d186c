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
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <variant>
#include <vector>

#include "fhverify/circuit.hpp"
#include "fhverify/errors.hpp"
#include "fhverify/path_sum.hpp"
#include "fhverify/rng.hpp"
#include "fhverify/transforms.hpp"

namespace fhv {

inline constexpr size_t kMaxDenseQubits = 20;
inline constexpr size_t kMaxPathSumBits = 22;

/// Dense state over n <= 20 qubits; amplitude index is the BitString word.
struct StateVector {
    size_t n = 0;
    std::vector<std::complex<double>> amplitudes;

    static StateVector basis(const BitString &s) {
        check_capacity(s.size());
        StateVector out{s.size(), std::vector<std::complex<double>>(size_t{1} << s.size())};
        out.amplitudes[s.word()] = 1;
        return out;
    }

    static void check_capacity(size_t n) {
        if (n > kMaxDenseQubits) {
            throw CapacityError(
                "dense simulation supports at most " + std::to_string(kMaxDenseQubits) + " qubits, circuit has " +
                std::to_string(n));
        }
    }

    std::complex<double> amplitude(const BitString &s) const {
        if (s.size() != n) {
            throw StructuralError("outcome length does not match the state");
        }
        return amplitudes[s.word()];
    }

    double norm_squared() const {
        double total = 0;
        for (const auto &a : amplitudes) {
            total += std::norm(a);
        }
        return total;
    }

    void apply(const ClassicalLayer &layer) {
        CompiledLayer compiled(layer, n);
        for (const auto &op : compiled.ops()) {
            for (uint64_t x = 0; x < amplitudes.size(); x++) {
                if ((x & op.controls) == op.controls && (x & op.target) == 0) {
                    std::swap(amplitudes[x], amplitudes[x | op.target]);
                }
            }
        }
    }

    void apply(const TransformLayer &f) {
        f.validate(n);
        if (f.kind == TransformKind::Hadamard) {
            apply_hadamards(f);
        } else {
            apply_fourier(f, f.kind == TransformKind::Qft ? 1 : -1);
        }
    }

   private:
    void apply_hadamards(const TransformLayer &f) {
        const double h = std::numbers::sqrt2 / 2;
        for (auto q : f.support) {
            uint64_t bit = qubit_mask(n, q);
            for (uint64_t x = 0; x < amplitudes.size(); x++) {
                if (x & bit) {
                    continue;
                }
                auto a0 = amplitudes[x];
                auto a1 = amplitudes[x | bit];
                amplitudes[x] = h * (a0 + a1);
                amplitudes[x | bit] = h * (a0 - a1);
            }
        }
    }

    // Unitary DFT on each coset of the support: out[k] = 2^(-m/2) sum_j e^{sign*2*pi*i*j*k/2^m} in[j].
    void apply_fourier(const TransformLayer &f, int sign) {
        size_t m = f.m();
        size_t len = size_t{1} << m;
        std::vector<uint64_t> offsets(len);
        for (uint64_t j = 0; j < len; j++) {
            offsets[j] = scatter_support(j, f.support, n);
        }
        uint64_t rest = low_mask(n) & ~f.support_mask(n);
        std::vector<std::complex<double>> buf(len);
        uint64_t base = 0;
        do {
            for (size_t j = 0; j < len; j++) {
                buf[j] = amplitudes[base | offsets[j]];
            }
            fft(buf, sign);
            for (size_t j = 0; j < len; j++) {
                amplitudes[base | offsets[j]] = buf[j];
            }
            base = (base - rest) & rest;
        } while (base != 0);
    }

    static void fft(std::vector<std::complex<double>> &v, int sign) {
        size_t len = v.size();
        for (size_t i = 1, j = 0; i < len; i++) {
            size_t bit = len >> 1;
            for (; j & bit; bit >>= 1) {
                j ^= bit;
            }
            j ^= bit;
            if (i < j) {
                std::swap(v[i], v[j]);
            }
        }
        for (size_t width = 2; width <= len; width <<= 1) {
            for (size_t k = 0; k < width / 2; k++) {
                long double angle = sign * 2 * std::numbers::pi_v<long double> * k / width;
                std::complex<double> w(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
                for (size_t start = 0; start < len; start += width) {
                    auto even = v[start + k];
                    auto odd = w * v[start + k + width / 2];
                    v[start + k] = even + odd;
                    v[start + k + width / 2] = even - odd;
                }
            }
        }
        double scale = 1 / std::sqrt(static_cast<double>(len));
        for (auto &x : v) {
            x *= scale;
        }
    }
};

/// Applies every layer of the circuit to its input basis state.
inline StateVector dense_evolve(const KTransformCircuit &c) {
    StateVector::check_capacity(c.n);
    StateVector state = StateVector::basis(CompiledLayer(c.classical[0], c.n).apply(c.input));
    for (size_t i = 0; i < c.transforms.size(); i++) {
        state.apply(c.transforms[i]);
        state.apply(c.classical[i + 1]);
    }
    return state;
}

inline std::complex<double> exact_amplitude_dense(const KTransformCircuit &c, const BitString &s) {
    return dense_evolve(c).amplitude(s);
}

/// Sum of path weights over the whole first coset, scaled by 2^(-(a+b)/2).
inline std::complex<double> exact_amplitude_pathsum(const KTransformCircuit &c, const BitString &s) {
    TwoTransformInstance inst(c, s);
    if (inst.a() > kMaxPathSumBits) {
        throw CapacityError(
            "path enumeration supports first-transform supports of at most " + std::to_string(kMaxPathSumBits) +
            " qubits, got " + std::to_string(inst.a()));
    }
    Coset coset = inst.first_coset();
    std::complex<double> total = 0;
    for (uint64_t j = 0; j < (uint64_t{1} << inst.a()); j++) {
        total += inst.weight(coset.member(j)).value();
    }
    return total * std::pow(2.0, -0.5 * static_cast<double>(inst.a() + inst.b()));
}

struct OutcomeHistogram {
    std::map<BitString, uint64_t> counts;
    uint64_t shots = 0;

    /// Most frequent outcome; ties go to the lexicographically smallest string.
    BitString modal() const {
        if (counts.empty()) {
            throw std::logic_error("empty histogram has no modal outcome");
        }
        auto best = counts.begin();
        for (auto it = counts.begin(); it != counts.end(); ++it) {
            if (it->second > best->second) {
                best = it;
            }
        }
        return best->first;
    }
};

/// Honest prover: `shots` measurement outcomes of the circuit, drawn from |amplitude|^2.
inline OutcomeHistogram prove(const KTransformCircuit &c, uint64_t shots, uint64_t seed) {
    StateVector state = dense_evolve(c);
    std::vector<double> cumulative(state.amplitudes.size());
    double total = 0;
    size_t last_nonzero = 0;
    for (size_t i = 0; i < cumulative.size(); i++) {
        double p = std::norm(state.amplitudes[i]);
        total += p;
        cumulative[i] = total;
        if (p > 0) {
            last_nonzero = i;
        }
    }
    OutcomeHistogram hist;
    hist.shots = shots;
    for (uint64_t shot = 0; shot < shots; shot++) {
        double u = StreamRng(seed, shot).uniform() * total;
        auto idx = static_cast<size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        hist.counts[BitString(c.n, std::min(idx, last_nonzero))]++;
    }
    return hist;
}

struct FixedOutcome {
    BitString outcome;
};
struct UniformRandomOutcome {};
struct BitFlipOfHonest {};
using DishonestStrategy = std::variant<FixedOutcome, UniformRandomOutcome, BitFlipOfHonest>;

/// Adversarial prover used to exercise verifier soundness.
inline BitString dishonest_prove(const KTransformCircuit &c, const DishonestStrategy &strategy, uint64_t seed) {
    if (const auto *fixed = std::get_if<FixedOutcome>(&strategy)) {
        if (fixed->outcome.size() != c.n) {
            throw StructuralError("fixed outcome length does not match the circuit");
        }
        return fixed->outcome;
    }
    StreamRng rng(seed, ~uint64_t{0});
    if (std::holds_alternative<UniformRandomOutcome>(strategy)) {
        return BitString(c.n, rng() & low_mask(c.n));
    }
    BitString honest = prove(c, 1, seed).modal();
    return honest.flipped(static_cast<size_t>(rng() % c.n));
}

}  // namespace fhv
