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

#include "qorc/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qorc::testgen {

using circuit::Circuit;
using circuit::Gate;

namespace {

std::string deterministic_outcome(const sim::OutcomeDistribution& dist, const std::string& what) {
  for (const auto& [label, p] : dist.probs) {
    if (p >= 1.0 - kDefaultTolerance) return label;
  }
  throw Error(what + ": fault-free outcome is not deterministic");
}

sim::OutcomeDistribution measure_plan(const TestPlan& plan, const sim::Ensemble& ensemble,
                                      const std::vector<sim::FaultSpec>& measure_faults) {
  if (plan.measurement.kind == Measurement::Kind::Bell)
    return sim::bell_measure(ensemble, plan.measurement.pair_a, plan.measurement.pair_b,
                             measure_faults);
  return sim::measure_distribution(ensemble, measure_faults);
}

/// Fill in `expected` by fault-free simulation and enforce the plan invariant.
void finalize_plan(TestPlan& plan, const Circuit& oracle) {
  sim::Ensemble clean;
  clean.push_back({1.0, sim::apply(composed_circuit(plan, oracle), sim::prepare(
                                       oracle.width, plan.init))});
  sim::OutcomeDistribution dist = measure_plan(plan, clean, {});
  std::string outcome = deterministic_outcome(dist, plan.name);
  if (plan.expected.empty()) {
    plan.expected = outcome;
  } else if (plan.expected != outcome) {
    throw Error(plan.name + ": constructed expected outcome " + plan.expected +
                " not reached (got " + outcome + ")");
  }
}

std::string bits(int width, char fill) { return std::string(static_cast<std::size_t>(width), fill); }

}  // namespace

GhzStage gen_ghz_stage(int k, bool a, int pivot) {
  if (pivot < 0 || pivot >= k) throw Error("GHZ pivot out of range");
  GhzStage stage;
  stage.prep = Circuit(k + 1);
  std::vector<Gate> gates{Gate::h(pivot)};
  for (int q = pivot + 1; q < k; ++q) gates.push_back(Gate::cn(q - 1, q, /*positive=*/!a));
  for (int q = pivot - 1; q >= 0; --q) gates.push_back(Gate::cn(q + 1, q, !a));
  stage.prep.gates = gates;
  stage.unprep = Circuit(k + 1);
  stage.unprep.gates.assign(gates.rbegin(), gates.rend());
  return stage;
}

std::array<TestPlan, 2> gen_t1_t2(const Circuit& oracle) {
  circuit::validate_oracle_shape(oracle);
  const int k = oracle.width - 1;
  const bool odd_gates = oracle.size() % 2 != 0;
  std::array<TestPlan, 2> plans;
  for (int i = 0; i < 2; ++i) {
    const bool a = i == 1;
    TestPlan& plan = plans[i];
    plan.name = a ? "T2" : "T1";
    plan.init = bits(oracle.width, a ? '1' : '0');
    GhzStage ghz = gen_ghz_stage(k, a);
    plan.prep = Circuit(oracle.width);
    plan.prep.append_stage(a ? "QBIST21" : "QBIST11", ghz.prep.gates);
    plan.post = Circuit(oracle.width);
    std::vector<Gate> post_gates;
    // Odd gate count leaves the entangled branch's target toggled; one CN off
    // the last input qubit removes that entanglement before unpreparing.
    if (odd_gates) post_gates.push_back(Gate::cn(k - 1, k, /*positive=*/true));
    post_gates.insert(post_gates.end(), ghz.unprep.gates.begin(), ghz.unprep.gates.end());
    plan.post.append_stage(a ? "QBIST22" : "QBIST12", std::move(post_gates));
    plan.expected = plan.init;
    plan.oracle_input = a ? "(|0>^k - |1>^k)/sqrt(2) (x) |1>" : "(|0>^k + |1>^k)/sqrt(2) (x) |0>";
    finalize_plan(plan, oracle);
  }
  return plans;
}

std::array<TestPlan, 2> gen_t5_t6(const Circuit& oracle) {
  circuit::validate_oracle_shape(oracle);
  const int k = oracle.width - 1;
  std::array<TestPlan, 2> plans;
  for (int i = 0; i < 2; ++i) {
    const bool a = i == 1;
    TestPlan& plan = plans[i];
    plan.name = a ? "T6" : "T5";
    plan.init = bits(k, a ? '1' : '0') + "0";
    std::vector<Gate> wall;
    for (int q = 0; q <= k; ++q) wall.push_back(Gate::h(q));
    plan.prep = Circuit(oracle.width);
    plan.prep.append_stage(a ? "QBIST61" : "QBIST51", wall);
    plan.post = Circuit(oracle.width);
    plan.post.append_stage(a ? "QBIST62" : "QBIST52", wall);
    plan.expected = plan.init;
    plan.oracle_input = a ? "|->^k (x) |+>" : "|+>^k (x) |+>";
    finalize_plan(plan, oracle);
  }
  return plans;
}

circuit::Circuit synthesize_qbist32(const boolfn::BooleanFunction& f) {
  boolfn::BistResidue residue = boolfn::bist_residue(f);
  Circuit stage(f.k + 1);
  std::vector<Gate> gates;
  for (const boolfn::Cube& cube : residue.esop.cubes) {
    std::vector<circuit::Control> controls;
    for (int v = 0; v < f.k; ++v) {
      if (cube.pos & (1u << v)) controls.push_back({v, true});
      if (cube.neg & (1u << v)) controls.push_back({v, false});
    }
    gates.push_back(Gate::mcx(std::move(controls), f.k));
  }
  stage.append_stage("QBIST32", std::move(gates));
  return stage;
}

std::array<TestPlan, 2> gen_t3_t4(const Circuit& oracle, const boolfn::BooleanFunction& f) {
  circuit::validate_oracle_shape(oracle);
  if (!(circuit::realized_function(oracle) == f))
    throw Error("gen_t3_t4: function does not match the oracle");
  const int k = oracle.width - 1;
  Circuit qbist32 = synthesize_qbist32(f);
  std::vector<Gate> wall;
  for (int q = 0; q <= k; ++q) wall.push_back(Gate::h(q));
  std::array<TestPlan, 2> plans;
  for (int i = 0; i < 2; ++i) {
    const bool a = i == 1;
    TestPlan& plan = plans[i];
    plan.name = a ? "T4" : "T3";
    plan.init = bits(k, a ? '1' : '0') + "1";
    plan.prep = Circuit(oracle.width);
    plan.prep.append_stage(a ? "QBIST41" : "QBIST31", wall);
    plan.post = Circuit(oracle.width);
    // same disentangling stage in both tests
    plan.post.append_stage(a ? "QBIST42" : "QBIST32", qbist32.gates);
    plan.post.append_stage(a ? "QBIST43" : "QBIST33", wall);
    plan.oracle_input = a ? "|->^k (x) |->" : "|+>^k (x) |->";
    finalize_plan(plan, oracle);
  }
  return plans;
}

std::vector<TestPlan> gen_standard_suite(const Circuit& oracle, const boolfn::BooleanFunction& f) {
  std::vector<TestPlan> suite;
  auto t12 = gen_t1_t2(oracle);
  auto t34 = gen_t3_t4(oracle, f);
  auto t56 = gen_t5_t6(oracle);
  suite.insert(suite.end(), {t12[0], t12[1], t34[0], t34[1], t56[0], t56[1]});
  return suite;
}

std::size_t alternative_suite_size(int k) {
  return 5 + 4 * static_cast<std::size_t>((k + 1) / 2);
}

std::vector<TestPlan> gen_alternative_suite(const Circuit& oracle,
                                            const boolfn::BooleanFunction& f) {
  circuit::validate_oracle_shape(oracle);
  if (!(circuit::realized_function(oracle) == f))
    throw Error("gen_alternative_suite: function does not match the oracle");
  const int k = oracle.width - 1;
  if (k < 2) throw Error("alternative suite needs k >= 2");
  std::vector<TestPlan> suite;
  auto t12 = gen_t1_t2(oracle);
  auto t56 = gen_t5_t6(oracle);
  suite.insert(suite.end(), {t12[0], t12[1], t56[0], t56[1]});

  // T1 circuitry repeated with |-> at the target; the unprep polarity matches
  // the GHZ sign picked up from the oracle's gate-count parity.
  {
    TestPlan plan;
    plan.name = "ALT-1";
    plan.init = bits(k, '0') + "1";
    GhzStage ghz = gen_ghz_stage(k, false);
    plan.prep = Circuit(oracle.width);
    plan.prep.append_stage("QBIST11", ghz.prep.gates);
    plan.prep.append_stage("TPREP", {Gate::h(k)});
    GhzStage unghz = gen_ghz_stage(k, oracle.size() % 2 != 0);
    plan.post = Circuit(oracle.width);
    plan.post.append_stage("QBIST12", unghz.unprep.gates);
    plan.post.append_stage("TMEAS", {Gate::h(k)});
    plan.oracle_input = "(|0>^k + |1>^k)/sqrt(2) (x) |->";
    finalize_plan(plan, oracle);
    suite.push_back(std::move(plan));
  }

  // Walking a zero pair: for each adjacent pair and sign, an EPR input
  // (|01> +/- |10>) against |1> elsewhere, in both CN orientations.
  int alt_index = 2;
  const int npairs = (k + 1) / 2;
  for (int i = 0; i < npairs; ++i) {
    int qa = 2 * i, qb = 2 * i + 1;
    if (qb >= k) {  // odd k: the last pair shifts up to fit
      qa = k - 2;
      qb = k - 1;
    }
    for (int sign = 0; sign < 2; ++sign) {
      for (int orient = 0; orient < 2; ++orient) {
        const int control = orient == 0 ? qb : qa;  // figures put |+/-> on the lower qubit
        const int partner = orient == 0 ? qa : qb;
        TestPlan plan;
        plan.name = "ALT-" + std::to_string(alt_index++);
        std::string init = bits(k, '1') + "1";
        init[control] = sign == 0 ? '0' : '1';
        plan.init = init;
        plan.prep = Circuit(oracle.width);
        plan.prep.append_stage("EPR", {Gate::h(control), Gate::cn(control, partner), Gate::h(k)});
        plan.post = Circuit(oracle.width);
        plan.post.append_stage("TMEAS", {Gate::h(k)});
        plan.measurement = {Measurement::Kind::Bell, qa, qb};
        std::ostringstream desc;
        desc << "(|01> " << (sign == 0 ? '+' : '-') << " |10>)/sqrt(2) on (q" << qa << ",q" << qb
             << "); |1> on the other inputs; |-> target";
        plan.oracle_input = desc.str();
        finalize_plan(plan, oracle);
        suite.push_back(std::move(plan));
      }
    }
  }
  if (suite.size() != alternative_suite_size(k))
    throw Error("alternative suite size mismatch");
  return suite;
}

circuit::Circuit composed_circuit(const TestPlan& plan, const Circuit& oracle) {
  return circuit::compose({{"prep", plan.prep}, {"oracle", oracle}, {"post", plan.post}});
}

sim::OutcomeDistribution run_plan(const TestPlan& plan, const Circuit& oracle,
                                  const std::vector<sim::FaultSpec>& faults) {
  std::vector<sim::FaultSpec> state_faults, measure_faults;
  for (const sim::FaultSpec& f : faults) {
    (f.model == sim::FaultSpec::Model::MeasureBias ? measure_faults : state_faults).push_back(f);
  }
  Circuit full = composed_circuit(plan, oracle);
  sim::Ensemble ensemble =
      sim::apply_faulty(full, sim::prepare(full.width, plan.init), state_faults);
  return measure_plan(plan, ensemble, measure_faults);
}

int CharacterizationReport::passed() const {
  int n = 0;
  for (const CharCase& c : cases) n += c.pass ? 1 : 0;
  return n;
}

namespace {

std::string format_amp(const amplitude& a) {
  std::ostringstream out;
  auto fmt = [&out](double v) {
    double r = std::abs(v) < 5e-13 ? 0.0 : v;
    out << r;
  };
  fmt(a.real());
  out << (a.imag() < -5e-13 ? "-" : "+");
  fmt(std::abs(a.imag()) < 5e-13 ? 0.0 : std::abs(a.imag()));
  out << "i";
  return out.str();
}

std::string describe_state(const sim::StateVector& s) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::norm(s.amps[i]) < 1e-20) continue;
    if (!first) out << " ";
    first = false;
    std::string label(static_cast<std::size_t>(s.width), '0');
    for (int q = 0; q < s.width; ++q) {
      if ((i >> (s.width - 1 - q)) & 1u) label[q] = '1';
    }
    out << "(" << format_amp(s.amps[i]) << ")|" << label << ">";
  }
  if (first) out << "0";
  return out.str();
}

bool states_equal_raw(const sim::StateVector& a, const sim::StateVector& b, double tol) {
  if (a.width != b.width) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.amps[i] - b.amps[i]) > tol) return false;
  }
  return true;
}

}  // namespace

CharacterizationReport characterize_gate(const Gate& nominal, const Circuit& under_test,
                                         const std::vector<sim::FaultSpec>& faults) {
  if (nominal.kind != Gate::Kind::MCX) throw Error("characterize_gate expects a k-CN gate");
  const int width = under_test.width;
  if (nominal.target >= width) throw Error("characterize_gate: width too small for the gate");

  // Characteristic register settings: every control at its activating value,
  // and every control at its non-activating value.
  std::string act(static_cast<std::size_t>(width), '0');
  std::string non(static_cast<std::size_t>(width), '0');
  for (const circuit::Control& c : nominal.controls) {
    act[c.qubit] = c.positive ? '1' : '0';
    non[c.qubit] = c.positive ? '0' : '1';
  }

  CharacterizationReport report;

  // Classical test vectors v0..v3: gate off with target 1/0, then on with
  // target 1/0. Pass = the measured bits match the nominal behavior.
  struct ClassicalSpec {
    const char* name;
    bool on;
    char target;
  };
  const ClassicalSpec classical[4] = {
      {"v0 off target=1", false, '1'},
      {"v1 off target=0", false, '0'},
      {"v2 on target=1", true, '1'},
      {"v3 on target=0", true, '0'},
  };
  for (const ClassicalSpec& spec : classical) {
    std::string in = spec.on ? act : non;
    in[nominal.target] = spec.target;
    std::string expect = in;
    if (spec.on) expect[nominal.target] = spec.target == '0' ? '1' : '0';
    std::vector<sim::FaultSpec> state_faults, measure_faults;
    for (const sim::FaultSpec& f : faults)
      (f.model == sim::FaultSpec::Model::MeasureBias ? measure_faults : state_faults).push_back(f);
    sim::OutcomeDistribution dist = sim::measure_distribution(
        sim::apply_faulty(under_test, sim::prepare(width, in), state_faults), measure_faults);
    CharCase cc;
    cc.name = spec.name;
    cc.classical = true;
    cc.expected = expect;
    double p = dist.at(expect);
    cc.pass = p >= 1.0 - kDefaultTolerance;
    std::ostringstream obs;
    obs << "P(" << expect << ")=" << p;
    cc.observed = obs.str();
    report.cases.push_back(std::move(cc));
  }

  // Quantum cases: minterm phase e^{+/-i phi} times target |0> + e^{+/-i vphi}|1>,
  // phi = vphi = pi/2. Case 2 = target relative phase +i (upper table block),
  // Case 1 = -i. Activation swaps the target pair, i.e. kicks e^{+/-i vphi}
  // onto the minterm and conjugates the target's relative phase; exact
  // amplitudes are compared, so phase bookkeeping faults are visible.
  const double phi = std::acos(-1.0) / 2.0;
  const std::size_t tmask = std::size_t{1} << (width - 1 - nominal.target);
  struct QuantumSpec {
    const char* name;
    bool activating;
    int minterm_sign;  // e^{+i phi} or e^{-i phi}
    int target_sign;   // case 2: +, case 1: -
  };
  const QuantumSpec quantum[8] = {
      {"case2 activating +phi", true, +1, +1},  {"case2 activating -phi", true, -1, +1},
      {"case2 non-activating +phi", false, +1, +1}, {"case2 non-activating -phi", false, -1, +1},
      {"case1 activating +phi", true, +1, -1},  {"case1 activating -phi", true, -1, -1},
      {"case1 non-activating +phi", false, +1, -1}, {"case1 non-activating -phi", false, -1, -1},
  };
  for (const QuantumSpec& spec : quantum) {
    std::string pattern = spec.activating ? act : non;
    pattern[nominal.target] = '0';
    std::size_t idx0 = 0;
    for (int q = 0; q < width; ++q)
      idx0 = (idx0 << 1) | static_cast<std::size_t>(pattern[q] - '0');
    const amplitude w = std::exp(amplitude{0.0, spec.minterm_sign * phi});
    const amplitude t1 = std::exp(amplitude{0.0, spec.target_sign * phi});
    sim::StateVector in(width);
    in.amps[idx0] = w * std::sqrt(0.5);
    in.amps[idx0 | tmask] = w * t1 * std::sqrt(0.5);
    sim::StateVector expected = in;
    if (spec.activating) std::swap(expected.amps[idx0], expected.amps[idx0 | tmask]);
    sim::Ensemble ensemble = sim::apply_faulty(under_test, in, faults);
    CharCase cc;
    cc.name = spec.name;
    cc.expected = describe_state(expected);
    cc.pass = true;
    for (const sim::Branch& b : ensemble) {
      if (b.weight <= kDefaultTolerance) continue;
      if (!states_equal_raw(b.state, expected, kDefaultTolerance)) cc.pass = false;
    }
    cc.observed = describe_state(ensemble.front().state);
    report.cases.push_back(std::move(cc));
  }
  return report;
}

CharacterizationReport characterize_gate(const Gate& nominal) {
  int width = nominal.target;
  for (const circuit::Control& c : nominal.controls) width = std::max(width, c.qubit);
  Circuit c(width + 1);
  c.gates.push_back(nominal);
  return characterize_gate(nominal, c, {});
}

namespace {

nlohmann::ordered_json measurement_json(const Measurement& m) {
  nlohmann::ordered_json j;
  if (m.kind == Measurement::Kind::Bell) {
    j["kind"] = "bell";
    j["pair"] = {m.pair_a, m.pair_b};
  } else {
    j["kind"] = "computational";
  }
  return j;
}

}  // namespace

std::string print_plans(const std::vector<TestPlan>& plans, const std::string& suite, int k) {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["k"] = k;
  j["width"] = k + 1;
  j["plans"] = nlohmann::ordered_json::array();
  for (const TestPlan& p : plans) {
    nlohmann::ordered_json pj;
    pj["name"] = p.name;
    pj["init"] = p.init;
    pj["prep"] = circuit::print_circuit(p.prep);
    pj["post"] = circuit::print_circuit(p.post);
    pj["measurement"] = measurement_json(p.measurement);
    pj["expected"] = p.expected;
    pj["oracle_input"] = p.oracle_input;
    j["plans"].push_back(std::move(pj));
  }
  return j.dump(2) + "\n";
}

PlanFile parse_plans(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("test plan file: ") + e.what());
  }
  PlanFile file;
  try {
    file.suite = j.at("suite").get<std::string>();
    file.k = j.at("k").get<int>();
    file.width = j.at("width").get<int>();
    for (const auto& pj : j.at("plans")) {
      TestPlan p;
      p.name = pj.at("name").get<std::string>();
      p.init = pj.at("init").get<std::string>();
      p.prep = circuit::parse_circuit(pj.at("prep").get<std::string>());
      p.post = circuit::parse_circuit(pj.at("post").get<std::string>());
      const auto& mj = pj.at("measurement");
      if (mj.at("kind").get<std::string>() == "bell") {
        p.measurement = {Measurement::Kind::Bell, mj.at("pair").at(0).get<int>(),
                         mj.at("pair").at(1).get<int>()};
      }
      p.expected = pj.at("expected").get<std::string>();
      p.oracle_input = pj.value("oracle_input", "");
      file.plans.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("test plan file: ") + e.what());
  }
  return file;
}

}  // namespace qorc::testgen
