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
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fhverify/circuit.hpp"
#include "fhverify/errors.hpp"
#include "fhverify/path_sum.hpp"
#include "fhverify/rng.hpp"
#include "fhverify/simulator.hpp"
#include "fhverify/transforms.hpp"

namespace fhv {

/// Yes: the circuit outputs s with probability >= delta.
/// No: no outcome has probability > epsilon.
struct PromiseParams {
    double delta = 0.9;
    double epsilon = 0.01;
    double confidence = 0.99;
    /// Overrides the Hoeffding sample count when set.
    std::optional<uint64_t> samples;

    void validate() const {
        auto fail = [](const std::string &why) {
            throw ParameterError(why);
        };
        if (!(delta > 0 && delta <= 1)) {
            fail("delta must lie in (0, 1], got " + std::to_string(delta));
        }
        if (!(epsilon >= 0 && epsilon < 1)) {
            fail("epsilon must lie in [0, 1), got " + std::to_string(epsilon));
        }
        if (!(confidence > 0 && confidence < 1)) {
            fail("confidence must lie in (0, 1), got " + std::to_string(confidence));
        }
        if (!(epsilon < delta / 2) || !(gamma() > 0)) {
            fail("need epsilon < delta/2 so that gamma = sqrt(delta/2) - sqrt(epsilon) > 0");
        }
        if (samples && *samples == 0) {
            fail("explicit sample count must be at least 1");
        }
    }

    /// Gap between the yes and no amplitude thresholds: sqrt(delta/2) - sqrt(epsilon).
    double gamma() const {
        return std::sqrt(delta / 2) - std::sqrt(epsilon);
    }
};

/// Thresholds rescaled by 2^(b-a) so they apply to the sampled mean 2^((b-a)/2) * amplitude.
struct RescaledParams {
    size_t a = 0;
    size_t b = 0;
    double delta_prime = 0;
    double epsilon_prime = 0;
    double gamma_prime = 0;
    double theta = 0;
    /// The amplitude modulus is at most 2^((a-b)/2), so probability delta is unreachable.
    bool trivial_reject = false;

    bool operator==(const RescaledParams &) const = default;
};

inline RescaledParams rescale(const PromiseParams &params, size_t a, size_t b) {
    if (!(params.gamma() > 0)) {
        throw ParameterError("gamma must be positive before rescaling");
    }
    int shift = static_cast<int>(b) - static_cast<int>(a);
    RescaledParams out;
    out.a = a;
    out.b = b;
    out.delta_prime = std::ldexp(params.delta, shift);
    out.epsilon_prime = std::ldexp(params.epsilon, shift);
    out.gamma_prime = std::sqrt(out.delta_prime / 2) - std::sqrt(out.epsilon_prime);
    out.theta = std::sqrt(out.epsilon_prime) + out.gamma_prime / 2;
    out.trivial_reject = std::ldexp(1.0, -shift) < params.delta;
    if (!(out.gamma_prime > 0)) {
        throw ParameterError("rescaled gap gamma' is not positive; the promise cannot be resolved");
    }
    return out;
}

/// Smallest N strictly greater than 8 / gamma'^2 * ln(2 / (1 - p)).
inline uint64_t required_samples(double gamma_prime, double p) {
    if (!(gamma_prime > 0) || !(p > 0 && p < 1)) {
        throw ParameterError("required_samples needs gamma' > 0 and p in (0, 1)");
    }
    double bound = 8 / (gamma_prime * gamma_prime) * std::log(2 / (1 - p));
    if (!std::isfinite(bound) || bound >= 0x1.0p53) {
        throw ParameterError("required sample count is not representable");
    }
    return static_cast<uint64_t>(std::floor(bound)) + 1;
}

/// Hoeffding bound on the chance that the decision is wrong: 2 exp(-gamma'^2 N / 8), capped at 1.
inline double failure_bound(double gamma_prime, uint64_t samples) {
    return std::min(1.0, 2 * std::exp(-gamma_prime * gamma_prime * static_cast<double>(samples) / 8));
}

/// One draw of the path-weight estimator: a uniform intermediate string from the
/// first coset, mapped to its weight. Modulus is exactly 0 or 1.
template <typename Rng>
std::complex<double> sample_path(const TwoTransformInstance &inst, Rng &rng) {
    Coset coset = inst.first_coset();
    return inst.weight(coset.member(static_cast<uint64_t>(rng()) & low_mask(coset.m()))).value();
}

template <typename Rng>
std::complex<double> sample_path(const KTransformCircuit &c, const BitString &s, Rng &rng) {
    return sample_path(TwoTransformInstance(c, s), rng);
}

struct AmplitudeEstimate {
    double a_hat = 0;
    double b_hat = 0;
};

/// Mean of `samples` independent path weights. Sample i draws from StreamRng(seed, i),
/// and partial sums are combined in a fixed block order, so the result does not depend
/// on `threads`.
inline AmplitudeEstimate estimate_amplitude(
    const TwoTransformInstance &inst, uint64_t samples, uint64_t seed, unsigned threads = 1) {
    if (samples == 0) {
        throw ParameterError("estimate_amplitude needs at least one sample");
    }
    constexpr uint64_t kBlock = 4096;
    uint64_t num_blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partial(num_blocks);
    auto run_block = [&](uint64_t block) {
        std::complex<double> sum = 0;
        uint64_t end = std::min(samples, (block + 1) * kBlock);
        for (uint64_t i = block * kBlock; i < end; i++) {
            StreamRng rng(seed, i);
            sum += sample_path(inst, rng);
        }
        partial[block] = sum;
    };
    unsigned workers = static_cast<unsigned>(std::clamp<uint64_t>(threads, 1, num_blocks));
    if (workers == 1) {
        for (uint64_t blk = 0; blk < num_blocks; blk++) {
            run_block(blk);
        }
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                for (uint64_t blk = w; blk < num_blocks; blk += workers) {
                    run_block(blk);
                }
            });
        }
    }
    std::complex<double> total = 0;
    for (const auto &p : partial) {
        total += p;
    }
    total /= static_cast<double>(samples);
    return {total.real(), total.imag()};
}

inline AmplitudeEstimate estimate_amplitude(
    const KTransformCircuit &c, const BitString &s, uint64_t samples, uint64_t seed, unsigned threads = 1) {
    return estimate_amplitude(TwoTransformInstance(c, s), samples, seed, threads);
}

enum class Decision { Accept, Reject };

enum class SampleSource { None, Hoeffding, Explicit };

struct VerdictReport {
    Decision decision = Decision::Reject;
    size_t k = 0;
    double a_hat = 0;
    double b_hat = 0;
    double theta = 0;
    uint64_t samples = 0;
    SampleSource sample_source = SampleSource::None;
    uint64_t seed = 0;
    double failure_bound = 0;
    bool mirrored = false;
    /// Exact outcome probability, available for k <= 1.
    std::optional<double> exact_probability;
    std::optional<RescaledParams> rescaled;
    double gamma = 0;
    bool trivial_reject = false;
    /// The exact probability lies strictly between epsilon and delta.
    bool promise_violation = false;
    std::string diagnostic;

    bool accepted() const {
        return decision == Decision::Accept;
    }
    bool operator==(const VerdictReport &) const = default;
};

namespace detail {

inline void require_k(const KTransformCircuit &c, size_t k, const char *op) {
    if (c.k() != k) {
        throw ArityError(
            std::string(op) + " needs k=" + std::to_string(k) + " but the circuit has k=" + std::to_string(c.k()));
    }
}

inline void require_outcome(const KTransformCircuit &c, const BitString &s) {
    if (s.size() != c.n) {
        throw StructuralError(
            "claimed outcome has length " + std::to_string(s.size()) + " but circuit has " + std::to_string(c.n) +
            " qubits");
    }
}

}  // namespace detail

/// Classical circuit: evaluate directly.
inline VerdictReport verify_k0(const KTransformCircuit &c, const BitString &s) {
    detail::require_k(c, 0, "verify_k0");
    detail::require_outcome(c, s);
    VerdictReport out;
    out.k = 0;
    bool hit = apply_classical(c.classical[0], c.input) == s;
    out.exact_probability = hit ? 1.0 : 0.0;
    out.decision = hit ? Decision::Accept : Decision::Reject;
    return out;
}

/// One transform: the outcome probability is exactly 2^-a when C2^-1(s) lies in
/// the coset of C1(s_in), and 0 otherwise.
inline VerdictReport verify_k1(const KTransformCircuit &c, const BitString &s, const PromiseParams &params) {
    detail::require_k(c, 1, "verify_k1");
    detail::require_outcome(c, s);
    params.validate();
    BitString r = apply_classical(c.classical[0], c.input);
    BitString t = invert_classical(c.classical[1], s);
    const TransformLayer &f = c.transforms[0];
    double probability = coset_of(f, r).contains(t) ? std::ldexp(1.0, -static_cast<int>(f.m())) : 0.0;

    VerdictReport out;
    out.k = 1;
    out.gamma = params.gamma();
    out.exact_probability = probability;
    if (probability >= params.delta) {
        out.decision = Decision::Accept;
    } else {
        out.decision = Decision::Reject;
        if (probability > params.epsilon) {
            out.promise_violation = true;
            out.diagnostic = "promise violated: exact probability " + std::to_string(probability) +
                             " lies strictly between epsilon and delta";
        }
    }
    return out;
}

/// Conjugate instance: <s_in| C1^-1 F1^dag C2^-1 F2^dag |C3^-1(s)>. The first and
/// second transforms swap roles, and the amplitude becomes the complex conjugate.
inline std::pair<KTransformCircuit, BitString> mirror_instance(const KTransformCircuit &c, const BitString &s) {
    detail::require_k(c, 2, "mirror_instance");
    detail::require_outcome(c, s);
    KTransformCircuit out;
    out.n = c.n;
    out.input = invert_classical(c.classical[2], s);
    out.classical = {ClassicalLayer{}, c.classical[1].inverse(), c.classical[0].inverse()};
    out.transforms = {adjoint(c.transforms[1]), adjoint(c.transforms[0])};
    return {std::move(out), c.input};
}

/// Two transforms: sample path weights through the smaller-support transform and
/// threshold the larger of |Re| and |Im| of their mean.
inline VerdictReport verify_k2(
    const KTransformCircuit &c,
    const BitString &s,
    const PromiseParams &params,
    uint64_t seed,
    unsigned threads = 1) {
    detail::require_k(c, 2, "verify_k2");
    detail::require_outcome(c, s);
    params.validate();

    VerdictReport out;
    out.k = 2;
    out.seed = seed;
    out.gamma = params.gamma();
    out.mirrored = c.transforms[0].m() > c.transforms[1].m();
    std::optional<TwoTransformInstance> inst;
    if (out.mirrored) {
        auto [mc, ms] = mirror_instance(c, s);
        inst.emplace(mc, ms);
    } else {
        inst.emplace(c, s);
    }

    RescaledParams rp = rescale(params, inst->a(), inst->b());
    out.rescaled = rp;
    out.theta = rp.theta;
    if (rp.trivial_reject) {
        out.trivial_reject = true;
        out.decision = Decision::Reject;
        out.diagnostic = "trivial reject: transform supports differ by " + std::to_string(rp.b - rp.a) +
                         " qubits, so no outcome can reach probability delta";
        return out;
    }

    out.samples = params.samples ? *params.samples : required_samples(rp.gamma_prime, params.confidence);
    out.sample_source = params.samples ? SampleSource::Explicit : SampleSource::Hoeffding;
    AmplitudeEstimate est = estimate_amplitude(*inst, out.samples, seed, threads);
    out.a_hat = est.a_hat;
    out.b_hat = est.b_hat;
    out.failure_bound = failure_bound(rp.gamma_prime, out.samples);
    out.decision = std::max(std::abs(est.a_hat), std::abs(est.b_hat)) >= rp.theta ? Decision::Accept : Decision::Reject;
    return out;
}

/// Dispatches on the number of transform layers; k > 2 is not verifiable.
inline VerdictReport verify(
    const KTransformCircuit &c,
    const BitString &s,
    const PromiseParams &params,
    uint64_t seed,
    unsigned threads = 1) {
    switch (c.k()) {
        case 0:
            return verify_k0(c, s);
        case 1:
            return verify_k1(c, s, params);
        case 2:
            return verify_k2(c, s, params, seed, threads);
        default:
            throw ArityError(
                "classical verification supports at most two transform layers, circuit has k=" +
                std::to_string(c.k()));
    }
}

/// Most frequent outcome over `shots` honest prover runs.
inline BitString find_witness(const KTransformCircuit &c, uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw ParameterError("witness search needs at least one shot");
    }
    return prove(c, shots, seed).modal();
}

}  // namespace fhv
