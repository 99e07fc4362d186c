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
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>

#include "fhverify/bit_string.hpp"

namespace fhv {

/// An angle stored exactly as a dyadic fraction of a full turn:
/// angle = 2*pi * numerator / 2^log2_denominator.
///
/// Kept in lowest terms, so equal angles compare equal. Sums of phases are exact;
/// rounding only happens in `unit()`.
class Phase {
   public:
    Phase() = default;

    /// numerator / 2^log2_denominator turns, reduced modulo one turn.
    static Phase turns(uint64_t numerator, unsigned log2_denominator) {
        if (log2_denominator > 64) {
            throw std::invalid_argument("phase denominator exceeds 2^64");
        }
        Phase p;
        p.num_ = numerator & low_mask(log2_denominator);
        p.log2_den_ = log2_denominator;
        p.reduce();
        return p;
    }

    static Phase zero() {
        return {};
    }

    /// pi radians.
    static Phase half_turn() {
        return turns(1, 1);
    }

    uint64_t numerator() const {
        return num_;
    }
    unsigned log2_denominator() const {
        return log2_den_;
    }

    /// True when the phase factor is exactly +1 or -1.
    bool is_sign() const {
        return log2_den_ <= 1;
    }

    Phase operator-() const {
        return turns(-num_, log2_den_);
    }

    Phase operator+(const Phase &other) const {
        unsigned l = log2_den_ > other.log2_den_ ? log2_den_ : other.log2_den_;
        return turns(scaled(l) + other.scaled(l), l);
    }

    Phase &operator+=(const Phase &other) {
        return *this = *this + other;
    }

    /// Angle in radians, in (-pi, pi].
    double radians() const {
        return 2 * std::numbers::pi * signed_turns();
    }

    /// e^{i * angle}. Multiples of a quarter turn are exact.
    std::complex<double> unit() const {
        if (log2_den_ <= 2) {
            switch (num_ << (2 - log2_den_)) {
                case 0:
                    return {1, 0};
                case 1:
                    return {0, 1};
                case 2:
                    return {-1, 0};
                default:
                    return {0, -1};
            }
        }
        long double a = 2 * std::numbers::pi_v<long double> * signed_turns();
        return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
    }

    bool operator==(const Phase &) const = default;

   private:
    uint64_t scaled(unsigned l) const {
        return num_ == 0 ? 0 : num_ << (l - log2_den_);
    }

    long double signed_turns() const {
        long double f = std::ldexp(static_cast<long double>(num_), -static_cast<int>(log2_den_));
        return f > 0.5L ? f - 1 : f;
    }

    void reduce() {
        if (num_ == 0) {
            log2_den_ = 0;
            return;
        }
        while ((num_ & 1) == 0) {
            num_ >>= 1;
            log2_den_--;
        }
    }

    uint64_t num_ = 0;
    unsigned log2_den_ = 0;
};

inline std::ostream &operator<<(std::ostream &out, const Phase &p) {
    return out << "2pi*" << p.numerator() << "/2^" << p.log2_denominator();
}

}  // namespace fhv
