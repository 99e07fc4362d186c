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

#include <cmath>
#include <cstdint>
#include <span>

#include "fhverify/bit_string.hpp"
#include "fhverify/circuit.hpp"
#include "fhverify/errors.hpp"
#include "fhverify/phase.hpp"

namespace fhv {

/// Reads the support qubits of `word` as an m-bit integer, first listed qubit most significant.
inline uint64_t gather_support(uint64_t word, std::span<const uint32_t> support, size_t n) {
    uint64_t v = 0;
    for (auto q : support) {
        v = (v << 1) | uint64_t((word & qubit_mask(n, q)) != 0);
    }
    return v;
}

/// Inverse of gather_support: spreads an m-bit integer over the support positions.
inline uint64_t scatter_support(uint64_t value, std::span<const uint32_t> support, size_t n) {
    uint64_t word = 0;
    size_t m = support.size();
    for (size_t i = 0; i < m; i++) {
        if ((value >> (m - 1 - i)) & 1) {
            word |= qubit_mask(n, support[i]);
        }
    }
    return word;
}

/// The 2^m strings that agree with `base` outside the transform support.
/// Never materialized; members are addressed by their support value.
class Coset {
   public:
    Coset(BitString base, const TransformLayer &f)
        : base_(base), support_(f.support), mask_(f.support_mask(base.size())) {
    }

    const BitString &base() const {
        return base_;
    }
    std::span<const uint32_t> support() const {
        return support_;
    }
    size_t m() const {
        return support_.size();
    }

    bool contains(const BitString &s) const {
        return s.size() == base_.size() && ((s.word() ^ base_.word()) & ~mask_) == 0;
    }

    /// The member whose support qubits read as `index` (first support qubit most significant).
    BitString member(uint64_t index) const {
        size_t n = base_.size();
        return BitString(n, (base_.word() & ~mask_) | scatter_support(index & low_mask(m()), support_, n));
    }

    /// Position of `s` within the coset; inverse of member().
    uint64_t index_of(const BitString &s) const {
        return gather_support(s.word(), support_, base_.size());
    }

   private:
    BitString base_;
    std::vector<uint32_t> support_;
    uint64_t mask_;
};

inline Coset coset_of(const TransformLayer &f, const BitString &s) {
    f.validate(s.size());
    return Coset(s, f);
}

/// Uniform draw from coset_of(f, s): each member has probability exactly 2^-m.
template <typename Rng>
BitString sample_coset(const TransformLayer &f, const BitString &s, Rng &rng) {
    Coset coset = coset_of(f, s);
    return coset.member(static_cast<uint64_t>(rng()) & low_mask(coset.m()));
}

/// Phase of the transition amplitude <s_out| F |s_in>.
///
/// Hadamard: pi times the parity of the support-restricted inner product.
/// QFT: 2*pi*j*k/2^m with j, k the support values of s_in, s_out. Inverse QFT negates.
inline Phase phase_of(const TransformLayer &f, const BitString &s_in, const BitString &s_out) {
    size_t n = s_in.size();
    f.validate(n);
    if (s_out.size() != n || ((s_in.word() ^ s_out.word()) & ~f.support_mask(n)) != 0) {
        throw MembershipError(
            "output " + s_out.str() + " is not reachable from " + s_in.str() + " through the transform");
    }
    uint64_t j = gather_support(s_in.word(), f.support, n);
    uint64_t k = gather_support(s_out.word(), f.support, n);
    unsigned m = static_cast<unsigned>(f.m());
    switch (f.kind) {
        case TransformKind::Hadamard:
            return Phase::turns(static_cast<uint64_t>(__builtin_parityll(j & k)), 1);
        case TransformKind::Qft:
        case TransformKind::InverseQft: {
            auto jk = static_cast<uint64_t>(static_cast<unsigned __int128>(j) * k & low_mask(m));
            Phase p = Phase::turns(jk, m);
            return f.kind == TransformKind::Qft ? p : -p;
        }
    }
    return {};
}

/// |<s_out|F|s_in>| for every member of the coset: 2^(-m/2).
inline double amplitude_magnitude(const TransformLayer &f) {
    return std::pow(2.0, -0.5 * static_cast<double>(f.m()));
}

inline TransformLayer adjoint(const TransformLayer &f) {
    TransformLayer out = f;
    if (f.kind == TransformKind::Qft) {
        out.kind = TransformKind::InverseQft;
    } else if (f.kind == TransformKind::InverseQft) {
        out.kind = TransformKind::Qft;
    }
    return out;
}

}  // namespace fhv
