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

#include "qorc/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace qorc::circuit {

Gate Gate::mcx(std::vector<Control> controls, int target) {
  std::sort(controls.begin(), controls.end(),
            [](const Control& a, const Control& b) { return a.qubit < b.qubit; });
  return {Kind::MCX, target, std::move(controls)};
}

bool Gate::active_on(uint64_t basis, int width) const {
  for (const Control& c : controls) {
    bool bit = (basis >> (width - 1 - c.qubit)) & 1u;
    if (bit != c.positive) return false;
  }
  return true;
}

void Circuit::append_stage(const std::string& label, std::vector<Gate> stage_gates) {
  std::size_t begin = gates.size();
  for (Gate& g : stage_gates) gates.push_back(std::move(g));
  stages.push_back({label, begin, gates.size()});
}

const StageSpan* Circuit::stage_of(std::size_t gate_index) const {
  for (const StageSpan& s : stages) {
    if (gate_index >= s.begin && gate_index < s.end) return &s;
  }
  return nullptr;
}

void Circuit::validate() const {
  if (width < 1 || width > kMaxWidth) throw Error("circuit width out of range");
  for (const Gate& g : gates) {
    if (g.target < 0 || g.target >= width) throw Error("gate target out of range");
    if (g.kind != Gate::Kind::MCX && !g.controls.empty())
      throw Error("controls on a non-MCX gate");
    uint32_t seen = 0;
    for (const Control& c : g.controls) {
      if (c.qubit < 0 || c.qubit >= width) throw Error("control qubit out of range");
      if (c.qubit == g.target) throw Error("control equals target");
      if (seen & (1u << c.qubit)) throw Error("duplicate control qubit");
      seen |= 1u << c.qubit;
    }
  }
  std::size_t cursor = 0;
  for (const StageSpan& s : stages) {
    if (s.begin != cursor || s.end < s.begin || s.end > gates.size())
      throw Error("stage spans do not partition the gate list");
    cursor = s.end;
  }
  if (!stages.empty() && cursor != gates.size())
    throw Error("stage spans do not cover the gate list");
}

std::string to_string(const ErrorLocation& loc) {
  switch (loc.site) {
    case ErrorLocation::Site::Wire:
      return "wire(b=" + std::to_string(loc.boundary) + ",q=" + std::to_string(loc.qubit) + ")";
    case ErrorLocation::Site::Init:
      return "init(q=" + std::to_string(loc.qubit) + ")";
    case ErrorLocation::Site::Measure:
      return "measure(q=" + std::to_string(loc.qubit) + ")";
  }
  return "?";
}

int GateCensus::cn() const {
  auto it = mcx_by_arity.find(1);
  return it == mcx_by_arity.end() ? 0 : it->second;
}

int GateCensus::mcx() const {
  int n = 0;
  for (auto& [arity, count] : mcx_by_arity) n += count;
  return n;
}

GateCensus& GateCensus::operator+=(const GateCensus& o) {
  h += o.h;
  x += o.x;
  y += o.y;
  z += o.z;
  for (auto& [arity, count] : o.mcx_by_arity) mcx_by_arity[arity] += count;
  return *this;
}

Circuit build_oracle(const boolfn::PprmExpansion& p) {
  Circuit c(p.k + 1);
  c.constant_phase = p.constant;
  int i = 0;
  for (uint32_t term : p.terms) {  // terms arrive sorted by (literal count, mask)
    std::vector<Control> controls;
    for (int v = 0; v < p.k; ++v) {
      if (term & (1u << v)) controls.push_back({v, true});
    }
    c.append_stage("p" + std::to_string(i++), {Gate::mcx(std::move(controls), p.k)});
  }
  return c;
}

std::vector<ErrorLocation> enumerate_error_locations(const Circuit& c) {
  std::vector<ErrorLocation> out;
  out.reserve(static_cast<std::size_t>(c.width) * (c.size() + 3));
  for (int q = 0; q < c.width; ++q) out.push_back({ErrorLocation::Site::Init, q, 0});
  for (std::size_t b = 0; b <= c.size(); ++b) {
    for (int q = 0; q < c.width; ++q) out.push_back({ErrorLocation::Site::Wire, q, b});
  }
  for (int q = 0; q < c.width; ++q) out.push_back({ErrorLocation::Site::Measure, q, 0});
  return out;
}

GateCensus gate_census(const Circuit& c) {
  GateCensus census;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case Gate::Kind::H: ++census.h; break;
      case Gate::Kind::X: ++census.x; break;
      case Gate::Kind::Y: ++census.y; break;
      case Gate::Kind::Z: ++census.z; break;
      case Gate::Kind::MCX: ++census.mcx_by_arity[g.arity()]; break;
    }
  }
  return census;
}

Circuit compose(const std::vector<std::pair<std::string, Circuit>>& stages) {
  if (stages.empty()) throw Error("compose of zero stages needs a declared width");
  return compose(stages.front().second.width, stages);
}

Circuit compose(int width, const std::vector<std::pair<std::string, Circuit>>& stages) {
  Circuit out(width);
  bool first = true;
  for (const auto& [label, part] : stages) {
    if (first) {
      out.constant_phase = part.constant_phase;
      first = false;
    }
    if (part.width != out.width) {
      throw WidthMismatch("compose: width " + std::to_string(part.width) + " != " +
                          std::to_string(out.width));
    }
    std::size_t offset = out.gates.size();
    out.gates.insert(out.gates.end(), part.gates.begin(), part.gates.end());
    if (part.stages.empty()) {
      out.stages.push_back({label, offset, out.gates.size()});
    } else {
      for (const StageSpan& s : part.stages)
        out.stages.push_back({s.label, s.begin + offset, s.end + offset});
    }
  }
  return out;
}

void validate_oracle_shape(const Circuit& c) {
  if (c.width < 2) throw NonOracleCircuit("oracle needs at least one input qubit plus a target");
  int target = c.width - 1;
  for (const Gate& g : c.gates) {
    if (g.kind != Gate::Kind::MCX)
      throw NonOracleCircuit("oracle may contain only k-CN gates");
    if (g.target != target)
      throw NonOracleCircuit("k-CN gate does not target the oracle target qubit");
    for (const Control& ctl : g.controls) {
      if (ctl.qubit == target)
        throw NonOracleCircuit("oracle target qubit used as a control");
    }
  }
}

boolfn::BooleanFunction realized_function(const Circuit& oracle) {
  validate_oracle_shape(oracle);
  int k = oracle.width - 1;
  boolfn::BooleanFunction f(k);
  for (uint32_t m = 0; m < f.size(); ++m) {
    uint64_t basis = static_cast<uint64_t>(m) << 1;  // top bits shifted past the target
    bool toggles = oracle.constant_phase;  // c0 presets the target
    for (const Gate& g : oracle.gates) {
      if (g.active_on(basis, oracle.width)) toggles = !toggles;
    }
    f.table[m] = toggles;
  }
  return f;
}

std::string print_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "# width: " << c.width << "\n";
  if (c.constant_phase) out << "# constant: 1\n";
  auto print_gate = [&out](const Gate& g) {
    switch (g.kind) {
      case Gate::Kind::H: out << "H q" << g.target << "\n"; return;
      case Gate::Kind::X: out << "X q" << g.target << "\n"; return;
      case Gate::Kind::Y: out << "Y q" << g.target << "\n"; return;
      case Gate::Kind::Z: out << "Z q" << g.target << "\n"; return;
      case Gate::Kind::MCX: break;
    }
    out << "MCX t=q" << g.target << " c=";
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      if (i) out << ",";
      out << "q" << g.controls[i].qubit << (g.controls[i].positive ? '+' : '-');
    }
    out << "\n";
  };
  if (c.stages.empty()) {
    for (const Gate& g : c.gates) print_gate(g);
  } else {
    for (const StageSpan& s : c.stages) {
      out << "# stage: " << s.label << "\n";
      for (std::size_t i = s.begin; i < s.end; ++i) print_gate(c.gates[i]);
    }
  }
  return out.str();
}

namespace {

int parse_qubit(const std::string& tok, int line_no) {
  if (tok.size() < 2 || tok[0] != 'q')
    throw ParseError("line " + std::to_string(line_no) + ": expected q<i>, got '" + tok + "'");
  try {
    return std::stoi(tok.substr(1));
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad qubit '" + tok + "'");
  }
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  Circuit c;
  bool width_seen = false;
  bool stage_open = false;
  std::string stage_label;
  std::size_t stage_begin = 0;
  auto close_stage = [&]() {
    if (stage_open) c.stages.push_back({stage_label, stage_begin, c.gates.size()});
    stage_open = false;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = line;
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t start = s.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    s = s.substr(start);
    if (s[0] == '#') {
      std::istringstream hdr(s.substr(1));
      std::string key;
      hdr >> key;
      if (key == "width:") {
        hdr >> c.width;
        width_seen = true;
      } else if (key == "constant:") {
        int v = 0;
        hdr >> v;
        c.constant_phase = v != 0;
      } else if (key == "stage:") {
        close_stage();
        std::string label;
        std::getline(hdr, label);
        std::size_t a = label.find_first_not_of(" \t");
        stage_label = a == std::string::npos ? "" : label.substr(a);
        stage_begin = c.gates.size();
        stage_open = true;
      }
      continue;  // other comments ignored
    }
    std::istringstream toks(s);
    std::string op;
    toks >> op;
    if (op == "H" || op == "X" || op == "Y" || op == "Z") {
      std::string q;
      toks >> q;
      int target = parse_qubit(q, line_no);
      Gate::Kind kind = op == "H"   ? Gate::Kind::H
                        : op == "X" ? Gate::Kind::X
                        : op == "Y" ? Gate::Kind::Y
                                    : Gate::Kind::Z;
      c.gates.push_back({kind, target, {}});
    } else if (op == "MCX") {
      std::string tpart, cpart;
      toks >> tpart >> cpart;
      if (tpart.rfind("t=", 0) != 0 || cpart.rfind("c=", 0) != 0)
        throw ParseError("line " + std::to_string(line_no) + ": expected MCX t=q<i> c=...");
      int target = parse_qubit(tpart.substr(2), line_no);
      std::vector<Control> controls;
      std::istringstream items(cpart.substr(2));
      std::string item;
      while (std::getline(items, item, ',')) {
        if (item.empty())
          throw ParseError("line " + std::to_string(line_no) + ": empty control");
        char pol = item.back();
        if (pol != '+' && pol != '-')
          throw ParseError("line " + std::to_string(line_no) + ": control needs +/- polarity");
        controls.push_back({parse_qubit(item.substr(0, item.size() - 1), line_no), pol == '+'});
      }
      if (controls.empty())
        throw ParseError("line " + std::to_string(line_no) + ": MCX needs a control list");
      c.gates.push_back(Gate::mcx(std::move(controls), target));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown gate '" + op + "'");
    }
  }
  close_stage();
  if (!width_seen) throw ParseError("missing '# width:' header");
  c.validate();
  return c;
}

}  // namespace qorc::circuit
