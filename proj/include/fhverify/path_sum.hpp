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

#include <complex>

#include "fhverify/circuit.hpp"
#include "fhverify/errors.hpp"
#include "fhverify/phase.hpp"
#include "fhverify/transforms.hpp"

namespace fhv {

/// Contribution of one intermediate string j to a two-transform amplitude:
/// zero when the second transform cannot reach the target from C2(j),
/// otherwise the unit phase e^{i(alpha + beta)}.
struct PathWeight {
    bool reachable = false;
    Phase phase;

    std::complex<double> value() const {
        return reachable ? phase.unit() : std::complex<double>{};
    }
};

/// The amplitude <s| C3 F2 C2 F1 C1 |s_in> reduced to <t| F2 C2 F1 |r>
/// with r = C1(s_in) and t = C3^-1(s), ready for path enumeration or sampling.
class TwoTransformInstance {
   public:
    TwoTransformInstance(const KTransformCircuit &c, const BitString &s) {
        if (c.k() != 2) {
            throw ArityError("path sums need exactly two transform layers, circuit has k=" + std::to_string(c.k()));
        }
        if (s.size() != c.n) {
            throw StructuralError(
                "outcome has length " + std::to_string(s.size()) + " but circuit has " + std::to_string(c.n) +
                " qubits");
        }
        for (const auto &f : c.transforms) {
            f.validate(c.n);
        }
        n_ = c.n;
        first_ = c.transforms[0];
        second_ = c.transforms[1];
        middle_ = CompiledLayer(c.classical[1], c.n);
        r_ = CompiledLayer(c.classical[0], c.n).apply(c.input);
        t_ = CompiledLayer(c.classical[2], c.n).apply_inverse(s);
        second_mask_ = second_.support_mask(n_);
    }

    const BitString &r() const {
        return r_;
    }
    const BitString &t() const {
        return t_;
    }
    const TransformLayer &first() const {
        return first_;
    }
    const TransformLayer &second() const {
        return second_;
    }
    /// Support sizes of the first and second transform.
    size_t a() const {
        return first_.m();
    }
    size_t b() const {
        return second_.m();
    }

    Coset first_coset() const {
        return Coset(r_, first_);
    }

    /// Path weight of intermediate string j, which must lie in first_coset().
    PathWeight weight(const BitString &j) const {
        BitString u(n_, middle_.apply(j.word()));
        if (((u.word() ^ t_.word()) & ~second_mask_) != 0) {
            return {};
        }
        return {true, phase_of(first_, r_, j) + phase_of(second_, u, t_)};
    }

   private:
    size_t n_ = 0;
    TransformLayer first_;
    TransformLayer second_;
    CompiledLayer middle_;
    BitString r_;
    BitString t_;
    uint64_t second_mask_ = 0;
};

}  // namespace fhv
