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

#include "fhverify/simulator.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "fhverify/parser.hpp"
#include "test_util.hpp"

using namespace fhv;

static BitString bits(const char *s) {
    return BitString::from_text(s);
}

static KTransformCircuit bell() {
    KTransformCircuit c;
    c.n = 2;
    c.input = bits("00");
    c.classical = {ClassicalLayer{}, ClassicalLayer{{ReversibleGate::cnot(0, 1)}}};
    c.transforms = {{TransformKind::Hadamard, {0}}};
    return c;
}

TEST(dense_evolve, hh_identity) {
    auto state = dense_evolve(test_util::hh_identity());
    ASSERT_LT(std::abs(state.amplitudes[0] - 1.0), 1e-12);
    ASSERT_LT(std::abs(state.amplitudes[1]), 1e-12);
}

TEST(dense_evolve, bell_state) {
    auto state = dense_evolve(bell());
    double h = 1 / std::sqrt(2.0);
    ASSERT_LT(std::abs(state.amplitude(bits("00")) - h), 1e-12);
    ASSERT_LT(std::abs(state.amplitude(bits("11")) - h), 1e-12);
    ASSERT_LT(std::abs(state.amplitude(bits("01"))), 1e-12);
    ASSERT_LT(std::abs(state.amplitude(bits("10"))), 1e-12);
}

TEST(dense_evolve, bernstein_vazirani) {
    auto c = test_util::bernstein_vazirani(bits("101"));
    auto state = dense_evolve(c);
    for (uint64_t w = 0; w < 16; w++) {
        double expected = w == bits("1011").word() ? 1.0 : 0.0;
        ASSERT_LT(std::abs(state.amplitudes[w] - expected), 1e-12) << BitString(4, w).str();
    }
}

TEST(dense_evolve, capacity_limit) {
    KTransformCircuit c;
    c.n = 21;
    c.input = BitString::zeros(21);
    ASSERT_THROW(dense_evolve(c), CapacityError);
}

TEST(state_vector, transform_layers_match_dense_matrix) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 6)(rng);
        auto f = test_util::random_transform(n, 1, n, rng);
        auto mat = test_util::dense_transform_matrix(f, n);
        StateVector state{n, std::vector<std::complex<double>>(size_t{1} << n)};
        std::normal_distribution<double> gauss;
        for (auto &a : state.amplitudes) {
            a = {gauss(rng), gauss(rng)};
        }
        auto before = state.amplitudes;
        state.apply(f);
        for (size_t out = 0; out < before.size(); out++) {
            std::complex<double> expected = 0;
            for (size_t in = 0; in < before.size(); in++) {
                expected += mat[out][in] * before[in];
            }
            ASSERT_LT(std::abs(state.amplitudes[out] - expected), 1e-10);
        }
    }
}

TEST(state_vector, classical_layers_permute_amplitudes) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 8)(rng);
        auto layer = test_util::random_classical_layer(n, 10, rng);
        StateVector state{n, std::vector<std::complex<double>>(size_t{1} << n)};
        for (size_t i = 0; i < state.amplitudes.size(); i++) {
            state.amplitudes[i] = {double(i), -double(i)};
        }
        auto before = state.amplitudes;
        state.apply(layer);
        for (uint64_t w = 0; w < before.size(); w++) {
            auto image = apply_classical(layer, BitString(n, w));
            ASSERT_EQ(state.amplitudes[image.word()], before[w]);
        }
    }
}

TEST(state_vector, norm_preserved_layer_by_layer) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 10)(rng);
        auto c = test_util::random_circuit(n, 4, rng);
        auto state = StateVector::basis(apply_classical(c.classical[0], c.input));
        for (size_t i = 0; i < c.k(); i++) {
            state.apply(c.transforms[i]);
            ASSERT_NEAR(state.norm_squared(), 1.0, 1e-9);
            state.apply(c.classical[i + 1]);
            ASSERT_NEAR(state.norm_squared(), 1.0, 1e-9);
        }
    }
}

TEST(exact_amplitude_dense, examples) {
    ASSERT_LT(std::abs(exact_amplitude_dense(test_util::hh_identity(), bits("0")) - 1.0), 1e-12);
    ASSERT_LT(std::abs(exact_amplitude_dense(bell(), bits("01"))), 1e-12);
}

TEST(exact_amplitude_pathsum, examples) {
    ASSERT_EQ(exact_amplitude_pathsum(test_util::hh_identity(), bits("0")), std::complex<double>(1, 0));
    ASSERT_EQ(exact_amplitude_pathsum(test_util::hh_identity(), bits("1")), std::complex<double>(0, 0));
    auto no = test_util::uniform_no_instance();
    for (uint64_t w = 0; w < 4; w++) {
        ASSERT_NEAR(std::abs(exact_amplitude_pathsum(no, BitString(2, w))), 0.5, 1e-15);
        ASSERT_LT(std::abs(exact_amplitude_pathsum(no, BitString(2, w)) - exact_amplitude_dense(no, BitString(2, w))),
                  1e-12);
    }
}

TEST(exact_amplitude_pathsum, errors) {
    ASSERT_THROW(exact_amplitude_pathsum(bell(), bits("00")), ArityError);
    KTransformCircuit wide;
    wide.n = 24;
    wide.input = BitString::zeros(24);
    TransformLayer all{TransformKind::Hadamard, {}};
    for (uint32_t q = 0; q < 24; q++) {
        all.support.push_back(q);
    }
    wide.classical = {ClassicalLayer{}, ClassicalLayer{}, ClassicalLayer{}};
    wide.transforms = {all, {TransformKind::Hadamard, {0}}};
    ASSERT_THROW(exact_amplitude_pathsum(wide, BitString::zeros(24)), CapacityError);
}

TEST(exact_amplitude, dense_and_pathsum_agree) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 8)(rng);
        auto c = test_util::random_circuit(n, 2, rng);
        auto state = dense_evolve(c);
        double total = 0;
        for (uint64_t w = 0; w < state.amplitudes.size(); w++) {
            auto ps = exact_amplitude_pathsum(c, BitString(n, w));
            ASSERT_LT(std::abs(ps - state.amplitudes[w]), 1e-9);
            total += std::norm(state.amplitudes[w]);
        }
        ASSERT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(prove, deterministic_circuit) {
    auto hist = prove(test_util::bernstein_vazirani(bits("101")), 50, 9);
    ASSERT_EQ(hist.shots, 50);
    ASSERT_EQ(hist.counts.size(), 1);
    ASSERT_EQ(hist.counts.at(bits("1011")), 50);
    ASSERT_EQ(hist.modal(), bits("1011"));
}

TEST(prove, single_hadamard_is_fair) {
    KTransformCircuit c;
    c.n = 1;
    c.input = bits("0");
    c.classical = {ClassicalLayer{}, ClassicalLayer{}};
    c.transforms = {{TransformKind::Hadamard, {0}}};
    auto hist = prove(c, 100000, 3);
    uint64_t total = 0;
    for (const auto &[s, count] : hist.counts) {
        total += count;
        ASSERT_NEAR(count / 100000.0, 0.5, 0.01);
    }
    ASSERT_EQ(total, hist.shots);
    ASSERT_EQ(prove(c, 64, 8).counts, prove(c, 64, 8).counts);
}

TEST(prove, never_reports_zero_probability_outcomes) {
    auto c = bell();
    auto hist = prove(c, 5000, 1);
    ASSERT_EQ(hist.counts.count(bits("01")), 0);
    ASSERT_EQ(hist.counts.count(bits("10")), 0);
}

TEST(outcome_histogram, ties_break_lexicographically) {
    OutcomeHistogram h;
    h.counts[bits("11")] = 3;
    h.counts[bits("01")] = 3;
    h.counts[bits("10")] = 1;
    h.shots = 7;
    ASSERT_EQ(h.modal(), bits("01"));
}

TEST(dishonest_prove, strategies) {
    auto c = test_util::bernstein_vazirani(bits("101"));
    ASSERT_EQ(dishonest_prove(c, FixedOutcome{bits("0000")}, 1), bits("0000"));
    auto flipped = dishonest_prove(c, BitFlipOfHonest{}, 5);
    ASSERT_EQ(__builtin_popcountll(flipped.word() ^ bits("1011").word()), 1);
    auto r1 = dishonest_prove(c, UniformRandomOutcome{}, 12);
    ASSERT_EQ(r1, dishonest_prove(c, UniformRandomOutcome{}, 12));
    ASSERT_EQ(r1.size(), 4);
    ASSERT_THROW(dishonest_prove(c, FixedOutcome{bits("00")}, 1), StructuralError);
}

TEST(dense_evolve, corpus_normalized) {
    for (const auto &entry : std::filesystem::directory_iterator(test_util::circuit_dir())) {
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        auto c = parse_circuit(buf.str());
        ASSERT_NEAR(dense_evolve(c).norm_squared(), 1.0, 1e-9) << entry.path();
    }
}
