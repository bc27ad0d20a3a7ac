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

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qorc/circuit.hpp"
#include "qorc/common.hpp"

namespace qorc::sim {

/// Dense statevector. Basis index has qubit 0 (x1) as the most significant
/// bit and the last qubit (the oracle target) as the least significant.
struct StateVector {
  int width = 0;
  std::vector<amplitude> amps;

  StateVector() = default;
  explicit StateVector(int width_);

  std::size_t size() const { return amps.size(); }
  double norm() const;
  int bit(std::size_t index, int qubit) const {
    return static_cast<int>((index >> (width - 1 - qubit)) & 1u);
  }
};

/// Gate kernel execution: Auto picks OpenMP above a width threshold.
enum class ExecPolicy { Auto, Serial, Parallel };

StateVector prepare(int width, std::string_view basis);

void apply_gate_in_place(StateVector& s, const circuit::Gate& g, ExecPolicy policy = ExecPolicy::Auto);
void apply_in_place(const circuit::Circuit& c, StateVector& s, ExecPolicy policy = ExecPolicy::Auto);
StateVector apply(const circuit::Circuit& c, const StateVector& s, ExecPolicy policy = ExecPolicy::Auto);

struct FaultSpec {
  enum class Model { Pauli, InitBias, MeasureBias };

  Model model = Model::Pauli;
  circuit::ErrorLocation location;
  char axis = 'X';           // Pauli: 'X', 'Y', 'Z' (Y as i|0><1| - i|1><0|)
  double probability = 1.0;  // placement probability p, or bias b
  int stuck = 0;             // MeasureBias: readout forced to this value

  static FaultSpec pauli(char axis, std::size_t boundary, int qubit, double p = 1.0);
  static FaultSpec init_bias(int qubit, double b = 1.0);
  static FaultSpec measure_bias(int qubit, int stuck, double b = 1.0);

  /// Model/site pairing and ranges; boundary checked against the circuit.
  void validate(const circuit::Circuit& c) const;
  std::string to_string() const;
};

FaultSpec parse_fault(const std::string& text);

struct Branch {
  double weight = 1.0;
  StateVector state;
};
using Ensemble = std::vector<Branch>;

/// Branch ensemble for a circuit run from `init` with the given faults.
/// Pauli faults insert at their wire boundary with weight p (clean branch
/// 1-p); InitBias flips the prepared bit with weight b. MeasureBias specs are
/// rejected here (they act at measure time).
Ensemble apply_faulty(const circuit::Circuit& c, const StateVector& init,
                      const std::vector<FaultSpec>& faults, ExecPolicy policy = ExecPolicy::Auto);

/// Probabilities keyed by outcome label: a plain bit string for computational
/// measurements, or "<bits>|<BELL>" with the Bell pair positions dotted out
/// (e.g. "..111|PSI+").
struct OutcomeDistribution {
  int width = 0;
  std::map<std::string, double> probs;

  double at(const std::string& label) const;
  double sum() const;
};

/// Exact mixture of per-branch Born distributions; each MeasureBias fault
/// independently replaces its qubit's readout by the stuck value with
/// probability b.
OutcomeDistribution measure_distribution(const Ensemble& ensemble,
                                         const std::vector<FaultSpec>& measure_faults = {});

/// Joint measurement: Bell basis on (qa, qb), computational elsewhere.
OutcomeDistribution bell_measure(const StateVector& s, int qa, int qb);
OutcomeDistribution bell_measure(const Ensemble& ensemble, int qa, int qb,
                                 const std::vector<FaultSpec>& measure_faults = {});

struct ProductCheck {
  bool product = false;
  /// One (a|0>+b|1>) factor per qubit when product; global phase on factor 0.
  std::vector<std::array<amplitude, 2>> factors;
};

/// Sequential rank-1 peel per qubit; largest-singular-value ratio test.
ProductCheck is_product(const StateVector& s, double tol = kDefaultTolerance);

/// +/-1 phase per top-register minterm for a state of shape
/// (sum_x w_x |x>) (x) |+/->, normalized so minterm 0 carries +1.
/// Throws TargetEntangled / NotBalanced.
boolfn::SignVector phase_vector(const StateVector& s, double tol = kDefaultTolerance);

}  // namespace qorc::sim
