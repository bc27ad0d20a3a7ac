// Copyright 2026 The qorc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "qorc/circuit.hpp"
#include "qorc/sim.hpp"

// Serial reference simulator: builds each gate's full 2^w x 2^w unitary from
// Kronecker products of 2x2 blocks and multiplies it out. O(4^w) per gate, so
// it is capped at small widths; kept as an independent check on the bit-kernel
// path in qorc::sim.
namespace qorc::reference {

inline constexpr int kMaxReferenceWidth = 10;

/// Row-major dense unitary of one gate.
std::vector<amplitude> gate_unitary(const circuit::Gate& g, int width);

sim::StateVector apply(const circuit::Circuit& c, const sim::StateVector& s);

}  // namespace qorc::reference
