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

#include <doctest.h>

#include <random>
#include <set>

#include "qorc/circuit.hpp"

using namespace qorc;
using namespace qorc::circuit;

namespace {

boolfn::BooleanFunction example_function() {
  return boolfn::BooleanFunction::from_minterms(4, {2, 4, 5, 8, 9, 15});
}

Circuit example_oracle() { return build_oracle(boolfn::pprm_expand(example_function())); }

std::set<int> control_set(const Gate& g) {
  std::set<int> s;
  for (const Control& c : g.controls) s.insert(c.qubit);
  return s;
}

}  // namespace

TEST_CASE("build_oracle realizes the worked example's seven product terms") {
  Circuit oracle = example_oracle();
  CHECK(oracle.width == 5);
  CHECK(!oracle.constant_phase);
  REQUIRE(oracle.size() == 7);
  std::set<std::set<int>> controls;
  for (const Gate& g : oracle.gates) {
    CHECK(g.kind == Gate::Kind::MCX);
    CHECK(g.target == 4);
    for (const Control& c : g.controls) CHECK(c.positive);
    controls.insert(control_set(g));
  }
  std::set<std::set<int>> expected = {{0}, {1}, {2}, {2, 3}, {0, 1, 2}, {0, 2, 3}, {1, 2, 3}};
  CHECK(controls == expected);
  // ascending literal count, then ascending term mask
  CHECK(control_set(oracle.gates[0]) == std::set<int>{0});
  CHECK(control_set(oracle.gates[1]) == std::set<int>{1});
  CHECK(control_set(oracle.gates[2]) == std::set<int>{2});
  CHECK(control_set(oracle.gates[3]) == std::set<int>{2, 3});
  // stage labels p0..p6 cover one gate each
  REQUIRE(oracle.stages.size() == 7);
  CHECK(oracle.stages[0].label == "p0");
  CHECK(oracle.stages[6].label == "p6");
  CHECK(oracle.stage_of(3) == &oracle.stages[3]);
}

TEST_CASE("build_oracle edge cases") {
  boolfn::PprmExpansion empty;
  empty.k = 2;
  Circuit c = build_oracle(empty);
  CHECK(c.width == 3);
  CHECK(c.size() == 0);

  boolfn::BooleanFunction x1(1);
  x1.table = {0, 1};
  Circuit single = build_oracle(boolfn::pprm_expand(x1));
  CHECK(single.width == 2);
  REQUIRE(single.size() == 1);
  CHECK(single.gates[0].arity() == 1);

  // c0 lands in the metadata, never in a gate
  boolfn::BooleanFunction notx1(1);
  notx1.table = {1, 0};
  Circuit inverted = build_oracle(boolfn::pprm_expand(notx1));
  CHECK(inverted.constant_phase);
  CHECK(inverted.size() == 1);
}

TEST_CASE("error locations cover wires, inits and measurements") {
  Circuit tof(3);
  tof.gates.push_back(Gate::mcx({{0, true}, {1, true}}, 2));
  auto locs = enumerate_error_locations(tof);
  CHECK(locs.size() == 12);  // 6 wire sites + 3 inits + 3 measurements
  int wires = 0, inits = 0, measures = 0;
  for (const ErrorLocation& loc : locs) {
    switch (loc.site) {
      case ErrorLocation::Site::Wire: ++wires; break;
      case ErrorLocation::Site::Init: ++inits; break;
      case ErrorLocation::Site::Measure: ++measures; break;
    }
  }
  CHECK(wires == 6);
  CHECK(inits == 3);
  CHECK(measures == 3);

  Circuit bare(2);
  CHECK(enumerate_error_locations(bare).size() == 6);  // one boundary, both ends coincide

  CHECK(enumerate_error_locations(example_oracle()).size() == 50);
}

TEST_CASE("error location count follows width*(gates+3) on random circuits") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int width = 2 + static_cast<int>(rng() % 4);
    Circuit c(width);
    int gates = static_cast<int>(rng() % 9);
    for (int g = 0; g < gates; ++g) c.gates.push_back(Gate::h(static_cast<int>(rng() % width)));
    CHECK(enumerate_error_locations(c).size() ==
          static_cast<std::size_t>(width) * (c.size() + 3));
  }
}

TEST_CASE("gate census counts kinds and control arities") {
  Circuit c(5);
  c.gates.push_back(Gate::h(0));
  c.gates.push_back(Gate::h(4));
  c.gates.push_back(Gate::x(1));
  c.gates.push_back(Gate::cn(0, 4));
  c.gates.push_back(Gate::mcx({{0, true}, {1, false}, {2, true}}, 4));
  GateCensus census = gate_census(c);
  CHECK(census.h == 2);
  CHECK(census.x == 1);
  CHECK(census.cn() == 1);
  CHECK(census.mcx_by_arity.at(3) == 1);
  CHECK(census.total() == 5);

  CHECK(gate_census(Circuit(3)).total() == 0);
}

TEST_CASE("compose concatenates and keeps stage labels") {
  Circuit a(3);
  a.append_stage("first", {Gate::h(0), Gate::cn(0, 1)});
  Circuit b(3);
  b.append_stage("second", {Gate::x(2)});
  Circuit unlabeled(3);
  unlabeled.gates.push_back(Gate::z(1));

  Circuit out = compose({{"a", a}, {"b", b}, {"tail", unlabeled}});
  CHECK(out.size() == 4);
  REQUIRE(out.stages.size() == 3);
  CHECK(out.stage_of(0)->label == "first");
  CHECK(out.stage_of(2)->label == "second");
  CHECK(out.stage_of(3)->label == "tail");
  out.validate();

  CHECK(compose(4, {}).width == 4);
  CHECK(compose(4, {}).size() == 0);

  Circuit narrow(2);
  CHECK_THROWS_AS(compose({{"a", a}, {"n", narrow}}), WidthMismatch);
}

TEST_CASE("oracle shape validation") {
  Circuit good = example_oracle();
  CHECK_NOTHROW(validate_oracle_shape(good));

  Circuit target_as_control(3);
  target_as_control.gates.push_back(Gate::mcx({{2, true}}, 0));
  CHECK_THROWS_AS(validate_oracle_shape(target_as_control), NonOracleCircuit);

  Circuit has_h(3);
  has_h.gates.push_back(Gate::h(0));
  CHECK_THROWS_AS(validate_oracle_shape(has_h), NonOracleCircuit);

  Circuit wrong_target(3);
  wrong_target.gates.push_back(Gate::cn(0, 1));
  CHECK_THROWS_AS(validate_oracle_shape(wrong_target), NonOracleCircuit);
}

TEST_CASE("realized_function inverts build_oracle for every small function") {
  for (uint64_t bits = 0; bits < 256; ++bits) {
    boolfn::BooleanFunction f = boolfn::BooleanFunction::from_word(3, bits);
    CHECK(realized_function(build_oracle(boolfn::pprm_expand(f))) == f);
  }
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    boolfn::BooleanFunction f(4);
    for (auto& b : f.table) b = rng() & 1u;
    CHECK(realized_function(build_oracle(boolfn::pprm_expand(f))) == f);
  }
}

TEST_CASE("circuit text format round-trips bit-exactly") {
  Circuit oracle = example_oracle();
  std::string text = print_circuit(oracle);
  Circuit parsed = parse_circuit(text);
  CHECK(parsed == oracle);
  CHECK(print_circuit(parsed) == text);

  Circuit mixed(4);
  mixed.append_stage("stage one", {Gate::h(0), Gate::mcx({{0, true}, {1, false}}, 3)});
  mixed.append_stage("empty stage", {});
  mixed.append_stage("tail", {Gate::y(2), Gate::z(0), Gate::x(1)});
  mixed.constant_phase = true;
  CHECK(parse_circuit(print_circuit(mixed)) == mixed);

  Circuit bare(2);  // zero gates still need a width header
  CHECK(parse_circuit(print_circuit(bare)) == bare);
}

TEST_CASE("circuit parser rejects malformed input") {
  CHECK_THROWS_AS(parse_circuit("H q0\n"), ParseError);  // no width header
  CHECK_THROWS_AS(parse_circuit("# width: 2\nH0\n"), ParseError);
  CHECK_THROWS_AS(parse_circuit("# width: 2\nMCX t=q1\n"), ParseError);
  CHECK_THROWS_AS(parse_circuit("# width: 2\nMCX t=q1 c=q0\n"), ParseError);
  CHECK_THROWS_AS(parse_circuit("# width: 2\nQ q0\n"), ParseError);
  CHECK_THROWS_AS(parse_circuit("# width: 2\nH q7\n"), Error);       // out of range
  CHECK_THROWS_AS(parse_circuit("# width: 2\nMCX t=q1 c=q1+\n"), Error);  // control = target
}
