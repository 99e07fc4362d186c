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

#include "fhverify/circuit.hpp"

#include <random>
#include <set>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace fhv;

static BitString bits(const char *s) {
    return BitString::from_text(s);
}

TEST(bit_string, text_rendering) {
    auto s = bits("0110");
    ASSERT_EQ(s.size(), 4);
    ASSERT_EQ(s.str(), "0110");
    ASSERT_FALSE(s[0]);
    ASSERT_TRUE(s[1]);
    ASSERT_EQ(s.word(), 0b0110u);
    ASSERT_EQ(s.flipped(0).str(), "1110");
    ASSERT_EQ(s.with_bit(2, false).str(), "0100");
    ASSERT_EQ(BitString::zeros(3).str(), "000");
    ASSERT_EQ(bits("").size(), 0);
    ASSERT_LT(bits("0011"), bits("0100"));
}

TEST(bit_string, rejects_bad_input) {
    ASSERT_THROW(bits("01a"), StructuralError);
    ASSERT_THROW(bits(std::string(65, '0').c_str()), StructuralError);
    ASSERT_THROW(BitString(2, 0b100), StructuralError);
    ASSERT_THROW(bits("01")[2], StructuralError);
    ASSERT_EQ(bits(std::string(64, '1').c_str()).word(), ~uint64_t{0});
}

TEST(apply_gate, toffoli_family) {
    ASSERT_EQ(apply_gate(ReversibleGate::toffoli(0, 1, 2), bits("110")), bits("111"));
    ASSERT_EQ(apply_gate(ReversibleGate::toffoli(0, 1, 2), bits("100")), bits("100"));
    ASSERT_EQ(apply_gate(ReversibleGate::x(0), bits("011")), bits("111"));
    ASSERT_EQ(apply_gate(ReversibleGate{{0, 1, 2}, 3}, bits("1110")), bits("1111"));
    ASSERT_EQ(apply_gate(ReversibleGate{{0, 1, 2}, 3}, bits("1101")), bits("1101"));
}

TEST(apply_gate, index_errors) {
    ASSERT_THROW(apply_gate(ReversibleGate::x(3), bits("011")), StructuralError);
    ASSERT_THROW(apply_gate(ReversibleGate::cnot(5, 0), bits("011")), StructuralError);
    ASSERT_THROW(apply_gate(ReversibleGate::cnot(1, 1), bits("011")), StructuralError);
    ASSERT_THROW(apply_gate(ReversibleGate::toffoli(0, 0, 1), bits("011")), StructuralError);
}

TEST(apply_classical, examples) {
    ASSERT_EQ(apply_classical(ClassicalLayer{}, bits("0101")), bits("0101"));
    ASSERT_EQ(apply_classical(ClassicalLayer{{ReversibleGate::cnot(0, 1)}}, bits("10")), bits("11"));
    ClassicalLayer layer{{ReversibleGate::x(2), ReversibleGate::cnot(2, 0)}};
    ASSERT_EQ(apply_classical(layer, bits("000")), bits("101"));

    // Truth table by hand: X(2) flips the last bit, then CNOT(2->0) copies it into bit 0.
    const char *expected[8] = {"101", "000", "111", "010", "001", "100", "011", "110"};
    std::set<BitString> images;
    for (uint64_t w = 0; w < 8; w++) {
        BitString out = apply_classical(layer, BitString(3, w));
        ASSERT_EQ(out, bits(expected[w])) << BitString(3, w).str();
        images.insert(out);
    }
    ASSERT_EQ(images.size(), 8);
}

TEST(invert_classical, examples) {
    ASSERT_EQ(invert_classical(ClassicalLayer{}, bits("1111")), bits("1111"));
    ASSERT_EQ(invert_classical(ClassicalLayer{{ReversibleGate::cnot(0, 1)}}, bits("11")), bits("10"));
}

TEST(invert_classical, round_trip_property) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 64)(rng);
        auto layer = test_util::random_classical_layer(n, 12, rng);
        auto s = test_util::random_bits(n, rng);
        ASSERT_EQ(apply_classical(layer, invert_classical(layer, s)), s);
        ASSERT_EQ(invert_classical(layer, apply_classical(layer, s)), s);
        ASSERT_EQ(apply_classical(layer.inverse(), apply_classical(layer, s)), s);
    }
}

TEST(apply_classical, bijective_on_all_strings) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 10)(rng);
        auto layer = test_util::random_classical_layer(n, 15, rng);
        std::vector<bool> hit(size_t{1} << n);
        for (uint64_t w = 0; w < hit.size(); w++) {
            auto out = apply_classical(layer, BitString(n, w));
            ASSERT_FALSE(hit[out.word()]);
            hit[out.word()] = true;
            // Pure: a second evaluation agrees.
            ASSERT_EQ(apply_classical(layer, BitString(n, w)), out);
        }
    }
}

TEST(normalize_circuit, merges_and_pads) {
    ClassicalLayer c1{{ReversibleGate::x(0)}};
    ClassicalLayer c2{{ReversibleGate::cnot(0, 1)}};
    std::vector<Layer> raw{c1, c2};
    auto circuit = normalize_circuit(2, bits("00"), raw);
    ASSERT_EQ(circuit.k(), 0);
    ASSERT_EQ(circuit.classical.size(), 1);
    ASSERT_EQ(circuit.classical[0].gates, (std::vector<ReversibleGate>{c1.gates[0], c2.gates[0]}));

    TransformLayer f{TransformKind::Hadamard, {0}};
    std::vector<Layer> single{f};
    auto padded = normalize_circuit(2, bits("00"), single);
    ASSERT_EQ(padded.k(), 1);
    ASSERT_TRUE(padded.classical[0].empty());
    ASSERT_EQ(padded.transforms[0], f);
    ASSERT_TRUE(padded.classical[1].empty());
}

TEST(normalize_circuit, rejects_adjacent_transforms) {
    TransformLayer f{TransformKind::Hadamard, {0}};
    TransformLayer g{TransformKind::Hadamard, {1}};
    std::vector<Layer> raw{ClassicalLayer{{ReversibleGate::x(0)}}, f, g};
    ASSERT_THROW(normalize_circuit(2, bits("00"), raw), StructuralError);
    std::vector<Layer> overlapping{f, f};
    ASSERT_THROW(normalize_circuit(2, bits("00"), overlapping), StructuralError);
    // An explicit classical layer, even an empty one, separates them.
    std::vector<Layer> empty_between{f, ClassicalLayer{}, g};
    auto c = normalize_circuit(2, bits("00"), empty_between);
    ASSERT_EQ(c.k(), 2);
    ASSERT_TRUE(c.classical[1].empty());
}

TEST(normalize_circuit, validates_structure) {
    std::vector<Layer> none;
    ASSERT_THROW(normalize_circuit(0, BitString(), none), StructuralError);
    ASSERT_THROW(normalize_circuit(2, bits("000"), none), StructuralError);
    std::vector<Layer> bad_support{TransformLayer{TransformKind::Qft, {0, 0}}};
    ASSERT_THROW(normalize_circuit(2, bits("00"), bad_support), StructuralError);
    std::vector<Layer> empty_support{TransformLayer{TransformKind::Qft, {}}};
    ASSERT_THROW(normalize_circuit(2, bits("00"), empty_support), StructuralError);
    std::vector<Layer> bad_gate{ClassicalLayer{{ReversibleGate::x(2)}}};
    ASSERT_THROW(normalize_circuit(2, bits("00"), bad_gate), StructuralError);
}

TEST(normalize_circuit, idempotent) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; trial++) {
        size_t n = std::uniform_int_distribution<size_t>(1, 8)(rng);
        size_t k = std::uniform_int_distribution<size_t>(0, 4)(rng);
        auto c = test_util::random_circuit(n, k, rng);
        auto once = normalize_circuit(c);
        ASSERT_EQ(once, c);
        ASSERT_EQ(normalize_circuit(once), once);
    }
}
