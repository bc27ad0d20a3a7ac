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
#include <string>
#include <vector>

#include "qorc/boolfn.hpp"
#include "qorc/circuit.hpp"
#include "qorc/sim.hpp"

namespace qorc::testgen {

struct Measurement {
  enum class Kind { Computational, Bell };

  Kind kind = Kind::Computational;
  int pair_a = -1;
  int pair_b = -1;

  bool operator==(const Measurement&) const = default;
};

/// One experiment: prepare `init`, run prep, the oracle under test, post,
/// then measure. Fault-free it reaches `expected` with probability 1.
struct TestPlan {
  std::string name;
  std::string init;
  circuit::Circuit prep;
  circuit::Circuit post;
  Measurement measurement;
  std::string expected;
  std::string oracle_input;  // human-readable description of the oracle input state

  bool operator==(const TestPlan&) const = default;
};

struct GhzStage {
  circuit::Circuit prep;    // |a>^k -> (|0>^k + (-1)^a |1>^k)/sqrt2
  circuit::Circuit unprep;  // exact inverse
};

/// H on the pivot plus a CN fan; open controls for a=1 so the all-ones init
/// maps onto the GHZ branch structure.
GhzStage gen_ghz_stage(int k, bool a, int pivot = 0);

std::array<TestPlan, 2> gen_t1_t2(const circuit::Circuit& oracle);
std::array<TestPlan, 2> gen_t5_t6(const circuit::Circuit& oracle);

/// One MCX per cube of bist_residue(f).esop; appended after the oracle it
/// makes the T3 response a product state. Empty for affine f.
circuit::Circuit synthesize_qbist32(const boolfn::BooleanFunction& f);

std::array<TestPlan, 2> gen_t3_t4(const circuit::Circuit& oracle, const boolfn::BooleanFunction& f);

std::vector<TestPlan> gen_standard_suite(const circuit::Circuit& oracle,
                                         const boolfn::BooleanFunction& f);

/// 5 + 4*ceil(k/2) plans: T1, T2, T5, T6, the T1 circuitry with |-> at the
/// target, then per adjacent qubit pair and sign an EPR walking-a-zero plan in
/// both CN orientations, measured in the Bell basis on the pair.
std::vector<TestPlan> gen_alternative_suite(const circuit::Circuit& oracle,
                                            const boolfn::BooleanFunction& f);

std::size_t alternative_suite_size(int k);

circuit::Circuit composed_circuit(const TestPlan& plan, const circuit::Circuit& oracle);

/// Outcome distribution of a plan run. Faults are located relative to the
/// composed prep+oracle+post circuit; MeasureBias entries apply at readout.
sim::OutcomeDistribution run_plan(const TestPlan& plan, const circuit::Circuit& oracle,
                                  const std::vector<sim::FaultSpec>& faults = {});

struct CharCase {
  std::string name;
  bool classical = false;
  bool pass = false;
  std::string expected;
  std::string observed;
};

/// 4 classical + 8 phase cases for one k-CN gate.
struct CharacterizationReport {
  std::vector<CharCase> cases;

  int passed() const;
  bool all_pass() const { return passed() == static_cast<int>(cases.size()); }
};

/// Probe `under_test` (with optional faults) against the nominal gate's 12
/// characteristic operations. Classical cases compare measured bits; the
/// quantum cases compare exact amplitudes, phase bookkeeping included.
CharacterizationReport characterize_gate(const circuit::Gate& nominal,
                                         const circuit::Circuit& under_test,
                                         const std::vector<sim::FaultSpec>& faults = {});
CharacterizationReport characterize_gate(const circuit::Gate& nominal);

// Suite file format: JSON with circuits embedded as circuit text.
struct PlanFile {
  std::string suite;
  int k = 0;
  int width = 0;
  std::vector<TestPlan> plans;
};

std::string print_plans(const std::vector<TestPlan>& plans, const std::string& suite, int k);
PlanFile parse_plans(const std::string& text);

}  // namespace qorc::testgen
