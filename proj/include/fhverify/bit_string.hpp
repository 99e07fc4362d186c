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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "fhverify/errors.hpp"

namespace fhv {

/// Mask with the lowest `bits` bits set. Valid for bits in [0, 64].
constexpr uint64_t low_mask(size_t bits) {
    return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
}

/// Word mask of qubit `q` in an `n`-qubit register.
///
/// Qubit 0 is the leftmost character of the text rendering and the most
/// significant bit of the packed word, so the packed word equals the text read
/// as a binary number. State vectors are indexed by that number.
constexpr uint64_t qubit_mask(size_t n, size_t q) {
    return uint64_t{1} << (n - 1 - q);
}

/// A computational basis state on at most 64 qubits.
class BitString {
   public:
    static constexpr size_t kMaxBits = 64;

    BitString() = default;

    explicit BitString(size_t n, uint64_t word = 0) : n_(n), word_(word) {
        if (n > kMaxBits) {
            throw StructuralError("bit strings support at most 64 bits, got " + std::to_string(n));
        }
        if ((word & ~low_mask(n)) != 0) {
            throw StructuralError("word has bits set beyond length " + std::to_string(n));
        }
    }

    static BitString zeros(size_t n) {
        return BitString(n);
    }

    /// Parses exactly n characters of '0'/'1'.
    static BitString from_text(std::string_view text) {
        if (text.size() > kMaxBits) {
            throw StructuralError("bit strings support at most 64 bits, got " + std::to_string(text.size()));
        }
        uint64_t word = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw StructuralError("bit string may only contain '0' and '1': '" + std::string(text) + "'");
            }
            word = (word << 1) | uint64_t(c == '1');
        }
        return BitString(text.size(), word);
    }

    size_t size() const {
        return n_;
    }

    /// Packed representation; equals the text rendering read as a binary number.
    uint64_t word() const {
        return word_;
    }

    bool operator[](size_t q) const {
        check(q);
        return (word_ & qubit_mask(n_, q)) != 0;
    }

    BitString with_bit(size_t q, bool value) const {
        check(q);
        uint64_t m = qubit_mask(n_, q);
        return BitString(n_, value ? (word_ | m) : (word_ & ~m));
    }

    BitString flipped(size_t q) const {
        check(q);
        return BitString(n_, word_ ^ qubit_mask(n_, q));
    }

    std::string str() const {
        std::string out(n_, '0');
        for (size_t q = 0; q < n_; q++) {
            if (word_ & qubit_mask(n_, q)) {
                out[q] = '1';
            }
        }
        return out;
    }

    // Lexicographic on the text rendering for equal lengths.
    auto operator<=>(const BitString &) const = default;
    bool operator==(const BitString &) const = default;

   private:
    void check(size_t q) const {
        if (q >= n_) {
            throw StructuralError(
                "qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_) + " qubits");
        }
    }

    size_t n_ = 0;
    uint64_t word_ = 0;
};

}  // namespace fhv
