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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qorc/boolfn.hpp"
#include "qorc/common.hpp"

namespace qorc::circuit {

struct Control {
  int qubit = 0;
  bool positive = true;  // false = open control, activates on |0>

  bool operator==(const Control&) const = default;
};

struct Gate {
  enum class Kind { MCX, H, X, Y, Z };

  Kind kind = Kind::H;
  int target = 0;
  std::vector<Control> controls;  // MCX only, sorted by qubit

  static Gate mcx(std::vector<Control> controls, int target);
  static Gate h(int q) { return {Kind::H, q, {}}; }
  static Gate x(int q) { return {Kind::X, q, {}}; }
  static Gate y(int q) { return {Kind::Y, q, {}}; }
  static Gate z(int q) { return {Kind::Z, q, {}}; }

  /// Single CN: one positive control.
  static Gate cn(int control, int target, bool positive = true) {
    return mcx({{control, positive}}, target);
  }

  int arity() const { return static_cast<int>(controls.size()); }
  /// True when every control of this MCX matches basis index `basis`
  /// (qubit 0 is the most significant bit of the index).
  bool active_on(uint64_t basis, int width) const;

  bool operator==(const Gate&) const = default;
};

/// Contiguous run of gates [begin, end) sharing a label. Spans in a circuit
/// partition the gate list; empty spans are allowed (e.g. a QBIST32 stage for
/// an affine oracle).
struct StageSpan {
  std::string label;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const StageSpan&) const = default;
};

struct Circuit {
  int width = 0;
  std::vector<Gate> gates;
  std::vector<StageSpan> stages;
  bool constant_phase = false;  // PPRM c0: target preset / global phase, never a gate

  explicit Circuit(int width_ = 0) : width(width_) {}

  std::size_t size() const { return gates.size(); }
  /// Append gates under one label (closes at the current end).
  void append_stage(const std::string& label, std::vector<Gate> stage_gates);
  const StageSpan* stage_of(std::size_t gate_index) const;

  /// Throws on out-of-range qubits, duplicate/target-overlapping controls,
  /// or stage spans that do not partition the gate list.
  void validate() const;

  bool operator==(const Circuit&) const = default;
};

struct ErrorLocation {
  enum class Site { Wire, Init, Measure };

  Site site = Site::Wire;
  int qubit = 0;
  std::size_t boundary = 0;  // Wire only: 0..|gates|, both ends included

  bool operator==(const ErrorLocation&) const = default;
};

std::string to_string(const ErrorLocation& loc);

struct GateCensus {
  int h = 0;
  int x = 0;
  int y = 0;
  int z = 0;
  std::map<int, int> mcx_by_arity;

  int cn() const;     // 1-control MCX
  int mcx() const;    // all arities
  int total() const { return h + x + y + z + mcx(); }

  GateCensus& operator+=(const GateCensus& o);
};

/// One MCX per product term (all controls positive, target = qubit k),
/// ascending (literal count, mask); c0 recorded as metadata only.
Circuit build_oracle(const boolfn::PprmExpansion& p);

/// Every Init(q), Measure(q) and Wire(b, q); count = width * (|gates| + 3).
std::vector<ErrorLocation> enumerate_error_locations(const Circuit& c);

GateCensus gate_census(const Circuit& c);

/// Concatenation preserving stage labels. A part without stages contributes a
/// single span under its given label. Throws WidthMismatch.
Circuit compose(const std::vector<std::pair<std::string, Circuit>>& stages);
Circuit compose(int width, const std::vector<std::pair<std::string, Circuit>>& stages);

/// Throws NonOracleCircuit unless every gate is an MCX targeting qubit
/// width-1 with controls among the top qubits.
void validate_oracle_shape(const Circuit& c);

/// Truth table realized on the target by classical gate walking (constant
/// metadata excluded, matching the truth-table ground-truth convention).
boolfn::BooleanFunction realized_function(const Circuit& oracle);

// Circuit text format, one gate per line ("H q0", "X q2",
// "MCX t=q4 c=q0+,q1-"), "# stage: <label>" markers, "# width: n" header.
std::string print_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace qorc::circuit
