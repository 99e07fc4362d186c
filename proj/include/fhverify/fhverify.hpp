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

#include "fhverify/bit_string.hpp"
#include "fhverify/circuit.hpp"
#include "fhverify/errors.hpp"
#include "fhverify/parser.hpp"
#include "fhverify/path_sum.hpp"
#include "fhverify/phase.hpp"
#include "fhverify/rng.hpp"
#include "fhverify/simulator.hpp"
#include "fhverify/transforms.hpp"
#include "fhverify/verifier.hpp"
