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

#include <stdexcept>
#include <string>

namespace fhv {

/// Invalid qubit index, duplicated index, or otherwise malformed circuit structure.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on a circuit with the wrong number of transform layers.
struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Promise parameters (delta, epsilon, confidence, sample count) are out of range.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A dense or enumerating oracle was asked to handle more qubits than it supports.
struct CapacityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A transition was requested between strings that lie in different cosets of a transform.
struct MembershipError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace fhv
