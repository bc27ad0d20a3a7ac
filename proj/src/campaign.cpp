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

#include "qorc/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace qorc::campaign {

using circuit::Circuit;
using circuit::ErrorLocation;
using circuit::Gate;
using sim::FaultSpec;
using testgen::TestPlan;

std::vector<FaultSpec> enumerate_single_faults(const Circuit& c, const FaultModelSet& models) {
  std::vector<FaultSpec> out;
  const char axes[3] = {'X', 'Y', 'Z'};
  for (const ErrorLocation& loc : circuit::enumerate_error_locations(c)) {
    switch (loc.site) {
      case ErrorLocation::Site::Wire:
        if (models.pauli) {
          for (char axis : axes) {
            for (double p : models.pauli_ps) out.push_back(FaultSpec::pauli(axis, loc.boundary, loc.qubit, p));
          }
        }
        break;
      case ErrorLocation::Site::Init:
        if (models.init) out.push_back(FaultSpec::init_bias(loc.qubit, models.init_bias));
        break;
      case ErrorLocation::Site::Measure:
        if (models.measure) {
          out.push_back(FaultSpec::measure_bias(loc.qubit, 0, models.measure_bias));
          out.push_back(FaultSpec::measure_bias(loc.qubit, 1, models.measure_bias));
        }
        break;
    }
  }
  return out;
}

namespace {

/// Shift an oracle-relative fault into the prep+oracle+post frame.
FaultSpec shift_fault(const FaultSpec& fault, std::size_t prep_gates) {
  FaultSpec shifted = fault;
  if (shifted.location.site == ErrorLocation::Site::Wire)
    shifted.location.boundary += prep_gates;
  return shifted;
}

}  // namespace

DetectionRecord detection_probability(const TestPlan& plan, const FaultSpec& fault,
                                      const Circuit& oracle, double tol) {
  fault.validate(oracle);
  DetectionRecord rec;
  rec.fault = fault;
  rec.test = plan.name;
  sim::OutcomeDistribution dist =
      testgen::run_plan(plan, oracle, {shift_fault(fault, plan.prep.size())});
  rec.probability = std::clamp(1.0 - dist.at(plan.expected), 0.0, 1.0);
  rec.deterministic = std::abs(rec.probability - fault.probability) <= tol;
  return rec;
}

std::string to_string(Grade g) {
  switch (g) {
    case Grade::None: return "none";
    case Grade::Partial: return "partial";
    case Grade::Full: return "full";
  }
  return "?";
}

Grade CoverageMatrix::at(int req, const std::string& column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == column) return grades[req - 1][i];
  }
  throw Error("unknown matrix column '" + column + "'");
}

namespace {

Grade min_grade(Grade a, Grade b) { return static_cast<Grade>(std::min(static_cast<int>(a), static_cast<int>(b))); }

// ---- structural traces ---------------------------------------------------

// Coverage gathered per oracle gate, fault-free, from the states each plan
// feeds the oracle.
struct GateCoverage {
  std::set<int> act_targets;                         // target basis value while fully activated
  std::map<int, std::set<int>> nonact_ctrl_targets;  // control -> target values when addressed non-activating
  std::set<int> target_seen;                         // target basis values at gate entry
  std::set<int> act_signs_minus, nonact_signs_minus; // phases seen with |-> at the target
  std::set<int> act_signs_plus, nonact_signs_plus;   // phases seen with |+> at the target
};

struct PlanTrace {
  std::vector<GateCoverage> gates;
  // structural init/measure coverage
  std::vector<std::set<int>> init_values;      // per qubit
  std::vector<std::set<int>> measured_values;  // per qubit, from the expected outcome
};

void classical_trace(const TestPlan& plan, const Circuit& oracle, PlanTrace& trace, double tol) {
  sim::StateVector s = sim::apply(plan.prep, sim::prepare(oracle.width, plan.init));
  std::vector<std::size_t> branches;
  int target_bit = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::norm(s.amps[i]) <= tol) continue;
    int t = static_cast<int>(i & 1u);
    if (target_bit == -1) target_bit = t;
    if (t != target_bit) return;  // target not in a basis state
    branches.push_back(i);
  }
  if (branches.empty()) return;
  for (std::size_t basis : branches) {
    int tgt = target_bit;
    for (std::size_t gi = 0; gi < oracle.size(); ++gi) {
      const Gate& g = oracle.gates[gi];
      GateCoverage& cov = trace.gates[gi];
      cov.target_seen.insert(tgt);
      if (g.active_on(basis, oracle.width)) {
        cov.act_targets.insert(tgt);
        tgt ^= 1;
      } else {
        for (const circuit::Control& c : g.controls) {
          bool bit = (basis >> (oracle.width - 1 - c.qubit)) & 1u;
          if (bit != c.positive) cov.nonact_ctrl_targets[c.qubit].insert(tgt);
        }
      }
    }
  }
}

void phase_trace(const TestPlan& plan, const Circuit& oracle, PlanTrace& trace, double tol) {
  sim::StateVector s = sim::apply(plan.prep, sim::prepare(oracle.width, plan.init));
  // Peel the target factor; phases are only meaningful for |+>/|-> targets.
  double g00 = 0.0, g11 = 0.0;
  amplitude g01 = 0.0;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    g00 += std::norm(s.amps[i]);
    g11 += std::norm(s.amps[i + 1]);
    g01 += s.amps[i] * std::conj(s.amps[i + 1]);
  }
  if (std::abs(g00 - g11) > tol) return;
  if (std::abs(std::abs(g01) - g00) > tol || std::abs(g01.imag()) > tol) return;
  const bool target_minus = g01.real() < 0;
  // Top-register phases from the |0> row, relative to the first present minterm.
  const std::size_t ntop = s.size() / 2;
  std::vector<int> sign(ntop, 0);
  amplitude ref = 0.0;
  double ref_mag = 0.0;
  for (std::size_t x = 0; x < ntop; ++x) {
    amplitude a = s.amps[2 * x];
    if (std::norm(a) <= tol) continue;
    if (ref_mag == 0.0) {
      ref = a;
      ref_mag = std::abs(a);
    }
    amplitude ratio = a / ref;
    if (std::abs(ratio - 1.0) <= tol * 10) {
      sign[x] = 1;
    } else if (std::abs(ratio + 1.0) <= tol * 10) {
      sign[x] = -1;
    } else {
      return;  // non-real relative phases: outside the +/- bookkeeping
    }
  }
  for (std::size_t gi = 0; gi < oracle.size(); ++gi) {
    const Gate& g = oracle.gates[gi];
    GateCoverage& cov = trace.gates[gi];
    for (std::size_t x = 0; x < ntop; ++x) {
      if (sign[x] == 0) continue;
      std::size_t basis = x << 1;
      bool active = g.active_on(basis, oracle.width);
      if (target_minus) {
        (active ? cov.act_signs_minus : cov.nonact_signs_minus).insert(sign[x]);
      } else {
        (active ? cov.act_signs_plus : cov.nonact_signs_plus).insert(sign[x]);
      }
      if (active && target_minus) sign[x] = -sign[x];
    }
  }
}

PlanTrace trace_plan(const TestPlan& plan, const Circuit& oracle, double tol) {
  PlanTrace trace;
  trace.gates.resize(oracle.size());
  trace.init_values.resize(static_cast<std::size_t>(oracle.width));
  trace.measured_values.resize(static_cast<std::size_t>(oracle.width));
  for (int q = 0; q < oracle.width; ++q) {
    trace.init_values[q].insert(plan.init[q] - '0');
    char m = plan.expected.size() > static_cast<std::size_t>(q) ? plan.expected[q] : '.';
    if (m == '0' || m == '1') trace.measured_values[q].insert(m - '0');
  }
  classical_trace(plan, oracle, trace, tol);
  phase_trace(plan, oracle, trace, tol);
  return trace;
}

PlanTrace merge_traces(const std::vector<PlanTrace>& traces, const std::vector<std::size_t>& members) {
  PlanTrace merged = traces[members.front()];
  for (std::size_t mi = 1; mi < members.size(); ++mi) {
    const PlanTrace& t = traces[members[mi]];
    for (std::size_t g = 0; g < merged.gates.size(); ++g) {
      GateCoverage& a = merged.gates[g];
      const GateCoverage& b = t.gates[g];
      a.act_targets.insert(b.act_targets.begin(), b.act_targets.end());
      for (auto& [q, vals] : b.nonact_ctrl_targets) a.nonact_ctrl_targets[q].insert(vals.begin(), vals.end());
      a.target_seen.insert(b.target_seen.begin(), b.target_seen.end());
      a.act_signs_minus.insert(b.act_signs_minus.begin(), b.act_signs_minus.end());
      a.nonact_signs_minus.insert(b.nonact_signs_minus.begin(), b.nonact_signs_minus.end());
      a.act_signs_plus.insert(b.act_signs_plus.begin(), b.act_signs_plus.end());
      a.nonact_signs_plus.insert(b.nonact_signs_plus.begin(), b.nonact_signs_plus.end());
    }
    for (std::size_t q = 0; q < merged.init_values.size(); ++q) {
      merged.init_values[q].insert(t.init_values[q].begin(), t.init_values[q].end());
      merged.measured_values[q].insert(t.measured_values[q].begin(), t.measured_values[q].end());
    }
  }
  return merged;
}

// ---- grading ---------------------------------------------------------------

const std::set<int> kBothBits = {0, 1};
const std::set<int> kBothSigns = {-1, 1};

struct DetectionIndex {
  const std::vector<FaultSpec>* faults;
  // det[plan][fault]
  std::vector<std::vector<double>> det;
};

Grade grade_pauli(const DetectionIndex& idx, const std::vector<std::size_t>& members,
                  bool bitflip_row, int width, double tol) {
  bool any_instance = false, any_detected = false, all_ok = true;
  for (std::size_t fi = 0; fi < idx.faults->size(); ++fi) {
    const FaultSpec& f = (*idx.faults)[fi];
    if (f.model != FaultSpec::Model::Pauli) continue;
    bool mapped = bitflip_row ? (f.axis == 'X' || f.axis == 'Y') : (f.axis == 'Z' || f.axis == 'Y');
    if (!mapped) continue;
    any_instance = true;
    double d = 0.0;
    for (std::size_t m : members) d = std::max(d, idx.det[m][fi]);
    if (d > tol) any_detected = true;
    const bool target_wire = f.location.qubit == width - 1;
    // Bit-flip row: a flip on the target wire only needs strictly positive
    // exactly-computed detection; everything else must be deterministic given
    // presence.
    bool ok = (bitflip_row && target_wire) ? d > tol : d >= f.probability - tol;
    if (!ok) all_ok = false;
  }
  if (!any_instance || !any_detected) return Grade::None;
  return all_ok ? Grade::Full : Grade::Partial;
}

Grade grade_detection_class(const DetectionIndex& idx, const std::vector<std::size_t>& members,
                            FaultSpec::Model model, double tol) {
  bool any_instance = false, any_detected = false, all_ok = true;
  for (std::size_t fi = 0; fi < idx.faults->size(); ++fi) {
    const FaultSpec& f = (*idx.faults)[fi];
    if (f.model != model) continue;
    any_instance = true;
    double d = 0.0;
    for (std::size_t m : members) d = std::max(d, idx.det[m][fi]);
    if (d > tol) any_detected = true;
    if (d < f.probability - tol) all_ok = false;
  }
  if (!any_instance) return Grade::Full;  // vacuous: structural half decides
  if (!any_detected) return Grade::None;
  return all_ok ? Grade::Full : Grade::Partial;
}

Grade grade_init_structural(const PlanTrace& merged, int k) {
  bool all = true;
  for (int q = 0; q < k; ++q) {  // input qubits only; the target shows up under Req 7
    if (merged.init_values[q] != kBothBits) all = false;
  }
  return all ? Grade::Full : Grade::Partial;
}

Grade grade_measure_structural(const PlanTrace& merged, int width) {
  bool all = true, any = false;
  for (int q = 0; q < width; ++q) {
    if (!merged.measured_values[q].empty()) any = true;
    if (merged.measured_values[q] != kBothBits) all = false;
  }
  if (!any) return Grade::None;
  return all ? Grade::Full : Grade::Partial;
}

Grade grade_phase(const PlanTrace& merged, bool minus_row) {
  bool all = true, any = false;
  for (const GateCoverage& cov : merged.gates) {
    const std::set<int>& act = minus_row ? cov.act_signs_minus : cov.act_signs_plus;
    const std::set<int>& non = minus_row ? cov.nonact_signs_minus : cov.nonact_signs_plus;
    if (!act.empty() || !non.empty()) any = true;
    if (act != kBothSigns || non != kBothSigns) all = false;
  }
  if (merged.gates.empty()) return Grade::Full;  // nothing to exercise
  if (!any) return Grade::None;
  return all ? Grade::Full : Grade::Partial;
}

Grade grade_controls(const PlanTrace& merged, const Circuit& oracle) {
  bool all = true, any = false;
  for (std::size_t gi = 0; gi < merged.gates.size(); ++gi) {
    const GateCoverage& cov = merged.gates[gi];
    if (!cov.act_targets.empty()) any = true;
    if (cov.act_targets != kBothBits) all = false;
    for (const circuit::Control& c : oracle.gates[gi].controls) {
      auto it = cov.nonact_ctrl_targets.find(c.qubit);
      if (it != cov.nonact_ctrl_targets.end() && !it->second.empty()) any = true;
      if (it == cov.nonact_ctrl_targets.end() || it->second != kBothBits) all = false;
    }
  }
  if (merged.gates.empty()) return Grade::Full;
  if (!any) return Grade::None;
  return all ? Grade::Full : Grade::Partial;
}

Grade grade_target_basis(const PlanTrace& merged) {
  bool all = true, any = false;
  for (const GateCoverage& cov : merged.gates) {
    if (!cov.target_seen.empty()) any = true;
    if (cov.target_seen != kBothBits) all = false;
  }
  if (merged.gates.empty()) return Grade::Full;
  if (!any) return Grade::None;
  return all ? Grade::Full : Grade::Partial;
}

}  // namespace

CampaignResult run_campaign_with_plans(const Circuit& oracle, std::vector<TestPlan> plans,
                                       SuiteKind suite, const FaultModelSet& models,
                                       const CampaignOptions& opts) {
  CampaignResult result;
  result.suite = suite;
  result.k = oracle.width - 1;
  result.plans = std::move(plans);
  result.faults = enumerate_single_faults(oracle, models);
  // Validate up front: the evaluation loop below must not throw across the
  // parallel region.
  for (const sim::FaultSpec& f : result.faults) f.validate(oracle);

  const std::size_t nplans = result.plans.size();
  const std::size_t nfaults = result.faults.size();
  DetectionIndex idx;
  idx.faults = &result.faults;
  idx.det.assign(nplans, std::vector<double>(nfaults, 0.0));
  result.records.resize(nplans * nfaults);
  // (plan, fault) cells are independent; deterministic assembly by index.
  const std::int64_t total = static_cast<std::int64_t>(nplans * nfaults);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t cell = 0; cell < total; ++cell) {
    const std::size_t pi = static_cast<std::size_t>(cell) / nfaults;
    const std::size_t fi = static_cast<std::size_t>(cell) % nfaults;
    DetectionRecord rec =
        detection_probability(result.plans[pi], result.faults[fi], oracle, opts.tolerance);
    idx.det[pi][fi] = rec.probability;
    result.records[cell] = std::move(rec);
  }

  if (opts.include_qbist) {
    // Exploration only: wires strictly inside each plan's own prep/post stages.
    for (std::size_t pi = 0; pi < nplans; ++pi) {
      const TestPlan& plan = result.plans[pi];
      auto probe = [&](std::size_t boundary) {
        for (int q = 0; q < oracle.width; ++q) {
          for (char axis : {'X', 'Y', 'Z'}) {
            for (double p : models.pauli_ps) {
              FaultSpec fault = FaultSpec::pauli(axis, boundary, q, p);
              sim::OutcomeDistribution dist = testgen::run_plan(plan, oracle, {fault});
              DetectionRecord rec;
              rec.fault = fault;
              rec.test = plan.name;
              rec.probability = std::clamp(1.0 - dist.at(plan.expected), 0.0, 1.0);
              rec.deterministic = std::abs(rec.probability - p) <= opts.tolerance;
              rec.in_qbist = true;
              result.records.push_back(std::move(rec));
            }
          }
        }
      };
      if (models.pauli) {
        for (std::size_t b = 1; b < plan.prep.size(); ++b) probe(b);
        for (std::size_t b = 1; b < plan.post.size(); ++b)
          probe(plan.prep.size() + oracle.size() + b);
      }
    }
  }

  // Fault-free structural traces (the QBIST stages are assumed error-free).
  std::vector<PlanTrace> traces;
  traces.reserve(nplans);
  for (const TestPlan& plan : result.plans) traces.push_back(trace_plan(plan, oracle, opts.tolerance));

  std::vector<std::pair<std::string, std::vector<std::size_t>>> columns;
  if (suite == SuiteKind::Standard) {
    columns = {{"T1", {0}},      {"T2", {1}},      {"T3", {2}},
               {"T4", {3}},      {"T5", {4}},      {"T6", {5}},
               {"T1+T2", {0, 1}}, {"T3+T4", {2, 3}}, {"T5+T6", {4, 5}}};
  } else {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < nplans; ++i) {
      columns.push_back({result.plans[i].name, {i}});
      all.push_back(i);
    }
    columns.push_back({"SUITE", all});
  }

  for (auto& [name, members] : columns) result.matrix.columns.push_back(name);
  for (auto& row : result.matrix.grades) row.resize(columns.size());
  for (std::size_t ci = 0; ci < columns.size(); ++ci) {
    const std::vector<std::size_t>& members = columns[ci].second;
    PlanTrace merged = merge_traces(traces, members);
    result.matrix.grades[0][ci] = grade_pauli(idx, members, /*bitflip_row=*/true, oracle.width, opts.tolerance);
    result.matrix.grades[1][ci] = grade_pauli(idx, members, /*bitflip_row=*/false, oracle.width, opts.tolerance);
    result.matrix.grades[2][ci] =
        min_grade(grade_init_structural(merged, result.k),
                  grade_detection_class(idx, members, FaultSpec::Model::InitBias, opts.tolerance));
    result.matrix.grades[3][ci] = grade_phase(merged, /*minus_row=*/true);
    result.matrix.grades[4][ci] = grade_phase(merged, /*minus_row=*/false);
    result.matrix.grades[5][ci] = grade_controls(merged, oracle);
    result.matrix.grades[6][ci] = grade_target_basis(merged);
    result.matrix.grades[7][ci] =
        min_grade(grade_measure_structural(merged, oracle.width),
                  grade_detection_class(idx, members, FaultSpec::Model::MeasureBias, opts.tolerance));
  }
  return result;
}

CampaignResult run_campaign(const Circuit& oracle, const boolfn::BooleanFunction& f,
                            SuiteKind suite, const FaultModelSet& models,
                            const CampaignOptions& opts) {
  std::vector<TestPlan> plans = suite == SuiteKind::Standard
                                    ? testgen::gen_standard_suite(oracle, f)
                                    : testgen::gen_alternative_suite(oracle, f);
  return run_campaign_with_plans(oracle, std::move(plans), suite, models, opts);
}

const std::vector<CellRef>& reference_full_cells() {
  static const std::vector<CellRef> cells = {
      {1, "T1"},    {1, "T2"},    {1, "T1+T2"}, {2, "T5"},    {2, "T6"},   {2, "T5+T6"},
      {3, "T1+T2"}, {3, "T3+T4"}, {4, "T3+T4"}, {5, "T5+T6"}, {6, "T1+T2"}, {7, "T1+T2"},
      {8, "T1+T2"},
  };
  return cells;
}

const std::vector<CellRef>& reference_partial_cells() {
  static const std::vector<CellRef> cells = {
      {2, "T2"}, {2, "T3"}, {2, "T4"}, {2, "T1+T2"}, {2, "T3+T4"},
      {3, "T1"}, {3, "T2"}, {3, "T5"}, {3, "T6"},
      {4, "T3"}, {4, "T4"},
      {5, "T5"}, {5, "T6"},
      {6, "T1"}, {6, "T2"},
      {7, "T1"}, {7, "T2"},
      {8, "T1"}, {8, "T2"},
  };
  return cells;
}

std::vector<std::string> failing_reference_cells(const CoverageMatrix& m) {
  std::vector<std::string> failing;
  for (const CellRef& cell : reference_full_cells()) {
    if (m.at(cell.req, cell.column) != Grade::Full)
      failing.push_back("req" + std::to_string(cell.req) + "/" + cell.column);
  }
  return failing;
}

ComplexityReport complexity_report(const Circuit& oracle, const boolfn::BooleanFunction& f,
                                   std::optional<int> n_e) {
  ComplexityReport report;
  const int k = oracle.width - 1;
  report.k = k;
  std::vector<TestPlan> suite = testgen::gen_standard_suite(oracle, f);
  for (const TestPlan& plan : suite) {
    report.per_test.push_back({plan.name, circuit::gate_census(plan.prep), circuit::gate_census(plan.post)});
  }
  Circuit qbist32 = testgen::synthesize_qbist32(f);
  report.qbist32_mcx = static_cast<int>(qbist32.size());
  report.qbist32_exact = boolfn::bist_residue(f).exact;

  circuit::GateCensus t1 = report.per_test[0].prep;
  t1 += report.per_test[0].post;
  report.parity_fix_cn = oracle.size() % 2 != 0;
  report.t1_measured_cn = t1.cn();
  report.t1_measured_h = t1.h;
  report.t1_formula_cn = 2 * (k - 1);
  circuit::GateCensus t12 = t1;
  t12 += report.per_test[1].prep;
  t12 += report.per_test[1].post;
  report.t12_measured_cn = t12.cn();
  report.t12_measured_h = t12.h;
  report.t12_formula_cn = 4 * (k - 1);

  circuit::GateCensus t56 = report.per_test[4].prep;
  t56 += report.per_test[4].post;
  t56 += report.per_test[5].prep;
  t56 += report.per_test[5].post;
  report.t56_measured_h = t56.h;
  report.t56_text_h = 4 * k;
  report.t56_drawn_h = 4 * (k + 1);
  report.t56_text_matches_drawn = report.t56_text_h == report.t56_drawn_h;

  report.alternative_experiments = testgen::alternative_suite_size(k);
  report.n_e = n_e;
  if (n_e) {
    report.classical_bound = std::to_string(k + 4 + 2 * *n_e);
  } else {
    report.classical_bound = "k+4+2n_e = " + std::to_string(k + 4) + "+2n_e";
  }
  return report;
}

MultiFaultReport multi_fault_experiment(const Circuit& oracle, const boolfn::BooleanFunction& f,
                                        SuiteKind suite, int n_faults, int trials,
                                        std::uint64_t seed) {
  if (n_faults < 1) throw Error("multi_fault_experiment needs n_faults >= 1");
  MultiFaultReport report;
  report.n_faults = n_faults;
  report.trials = trials;
  report.seed = seed;
  std::vector<TestPlan> plans = suite == SuiteKind::Standard
                                    ? testgen::gen_standard_suite(oracle, f)
                                    : testgen::gen_alternative_suite(oracle, f);
  std::vector<ErrorLocation> wires;
  for (const ErrorLocation& loc : circuit::enumerate_error_locations(oracle)) {
    if (loc.site == ErrorLocation::Site::Wire) wires.push_back(loc);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_wire(0, wires.size() - 1);
  std::uniform_int_distribution<int> pick_axis(0, 2);
  const char axes[3] = {'X', 'Y', 'Z'};

  using Mat2 = std::array<amplitude, 4>;
  auto pauli_mat = [](char axis) -> Mat2 {
    switch (axis) {
      case 'X': return {0, 1, 1, 0};
      case 'Y': return {0, amplitude{0, 1}, amplitude{0, -1}, 0};
      default: return {1, 0, 0, -1};
    }
  };
  auto matmul = [](const Mat2& a, const Mat2& b) -> Mat2 {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };

  for (int t = 0; t < trials; ++t) {
    std::vector<FaultSpec> faults;
    for (int i = 0; i < n_faults; ++i) {
      const ErrorLocation& loc = wires[pick_wire(rng)];
      faults.push_back(FaultSpec::pauli(axes[pick_axis(rng)], loc.boundary, loc.qubit, 1.0));
    }
    // Faults that compose to the identity at every site are invisible by
    // construction; count them apart from the conjecture's claim.
    std::map<std::pair<std::size_t, int>, Mat2> sites;
    for (const FaultSpec& fs : faults) {
      auto key = std::make_pair(fs.location.boundary, fs.location.qubit);
      Mat2 m = pauli_mat(fs.axis);
      auto it = sites.find(key);
      sites[key] = it == sites.end() ? m : matmul(m, it->second);
    }
    bool identity = true;
    for (auto& [key, m] : sites) {
      if (std::abs(m[1]) > 1e-12 || std::abs(m[2]) > 1e-12 || std::abs(m[0] - m[3]) > 1e-12)
        identity = false;
    }
    if (identity) {
      ++report.cancelled;
      continue;
    }
    bool detected = false;
    for (const TestPlan& plan : plans) {
      std::vector<FaultSpec> shifted;
      for (const FaultSpec& fs : faults) shifted.push_back(shift_fault(fs, plan.prep.size()));
      sim::OutcomeDistribution dist = testgen::run_plan(plan, oracle, shifted);
      if (1.0 - dist.at(plan.expected) > kDefaultTolerance) {
        detected = true;
        break;
      }
    }
    if (detected) ++report.detected;
  }
  const int effective = trials - report.cancelled;
  report.fraction_excluding_cancelled = effective > 0 ? static_cast<double>(report.detected) / effective : 0.0;
  report.fraction_raw = trials > 0 ? static_cast<double>(report.detected) / trials : 0.0;
  return report;
}

namespace {

nlohmann::ordered_json census_json(const circuit::GateCensus& c) {
  nlohmann::ordered_json j;
  j["h"] = c.h;
  j["x"] = c.x;
  j["y"] = c.y;
  j["z"] = c.z;
  nlohmann::ordered_json mcx = nlohmann::ordered_json::object();
  for (auto& [arity, count] : c.mcx_by_arity) mcx[std::to_string(arity)] = count;
  j["mcx_by_arity"] = std::move(mcx);
  j["total"] = c.total();
  return j;
}

const char* kRequirementText[8] = {
    "bit flip (X or Y) at any wire is detected",
    "phase flip (Z or Y) at any wire is detected",
    "every input qubit initialized in both basis states",
    "phase kickback with |-> target probed for +/- phased activating and non-activating states",
    "no phase change with |+> target for +/- phased activating and non-activating states",
    "controls activated concurrently and addressed non-activating, target in both basis states",
    "every gate target acts on basis |0> and |1>",
    "every qubit measured in both basis states",
};

}  // namespace

nlohmann::ordered_json report_json(const CampaignResult& result, const ComplexityReport& complexity,
                                   const std::optional<MultiFaultReport>& multi) {
  nlohmann::ordered_json j;
  j["k"] = result.k;
  j["suite"] = result.suite == SuiteKind::Standard ? "standard" : "alternative";

  nlohmann::ordered_json census;
  census["k"] = complexity.k;
  nlohmann::ordered_json per_test = nlohmann::ordered_json::array();
  for (const auto& tc : complexity.per_test) {
    nlohmann::ordered_json t;
    t["test"] = tc.name;
    t["prep"] = census_json(tc.prep);
    t["post"] = census_json(tc.post);
    per_test.push_back(std::move(t));
  }
  census["per_test"] = std::move(per_test);
  census["qbist32_mcx"] = complexity.qbist32_mcx;
  census["qbist32_exact"] = complexity.qbist32_exact;
  nlohmann::ordered_json formulas;
  formulas["t1_added"] = {{"measured_cn", complexity.t1_measured_cn},
                          {"measured_h", complexity.t1_measured_h},
                          {"formula_cn", complexity.t1_formula_cn},
                          {"formula_h", complexity.t1_formula_h},
                          {"parity_fix_cn", complexity.parity_fix_cn}};
  formulas["t1_t2_added"] = {{"measured_cn", complexity.t12_measured_cn},
                             {"measured_h", complexity.t12_measured_h},
                             {"formula_cn", complexity.t12_formula_cn},
                             {"formula_h", complexity.t12_formula_h}};
  formulas["t5_t6_hadamards"] = {{"measured", complexity.t56_measured_h},
                                 {"text_formula", complexity.t56_text_h},
                                 {"drawn", complexity.t56_drawn_h},
                                 {"text_matches_drawn", complexity.t56_text_matches_drawn}};
  census["formulas"] = std::move(formulas);
  j["census"] = std::move(census);

  nlohmann::ordered_json experiments;
  experiments["standard"] = complexity.standard_experiments;
  experiments["alternative"] = complexity.alternative_experiments;
  experiments["classical_bound"] = complexity.classical_bound;
  if (complexity.n_e) experiments["n_e"] = *complexity.n_e;
  j["experiments"] = std::move(experiments);

  nlohmann::ordered_json matrix;
  matrix["columns"] = result.matrix.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int req = 1; req <= 8; ++req) {
    nlohmann::ordered_json row;
    row["requirement"] = req;
    row["checks"] = kRequirementText[req - 1];
    nlohmann::ordered_json cells;
    for (std::size_t ci = 0; ci < result.matrix.columns.size(); ++ci)
      cells[result.matrix.columns[ci]] = to_string(result.matrix.grades[req - 1][ci]);
    row["grades"] = std::move(cells);
    rows.push_back(std::move(row));
  }
  matrix["rows"] = std::move(rows);
  std::vector<std::string> failing =
      result.suite == SuiteKind::Standard ? failing_reference_cells(result.matrix)
                                          : std::vector<std::string>{};
  matrix["reference_full_cells_pass"] = failing.empty();
  matrix["failing_reference_cells"] = failing;
  j["matrix"] = std::move(matrix);

  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const DetectionRecord& rec : result.records) {
    nlohmann::ordered_json r;
    r["test"] = rec.test;
    r["fault"] = rec.fault.to_string();
    r["detection"] = rec.probability;
    r["deterministic"] = rec.deterministic;
    if (rec.in_qbist) r["in_qbist"] = true;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);

  if (multi) {
    nlohmann::ordered_json m;
    m["n_faults"] = multi->n_faults;
    m["trials"] = multi->trials;
    m["seed"] = multi->seed;
    m["detected"] = multi->detected;
    m["cancelled_to_identity"] = multi->cancelled;
    m["fraction_excluding_cancelled"] = multi->fraction_excluding_cancelled;
    m["fraction_raw"] = multi->fraction_raw;
    m["note"] = "Monte-Carlo support for the multiple-fault conjecture; not a proof.";
    j["multi_fault"] = std::move(m);
  }
  return j;
}

std::string render_report_text(const nlohmann::ordered_json& report) {
  std::ostringstream out;
  out << "campaign report (k=" << report.at("k").get<int>() << ", suite "
      << report.at("suite").get<std::string>() << ")\n\n";
  const auto& matrix = report.at("matrix");
  std::vector<std::string> columns = matrix.at("columns").get<std::vector<std::string>>();
  std::size_t wide = 4;
  for (const std::string& c : columns) wide = std::max(wide, c.size());
  auto pad = [wide](const std::string& s) {
    return s + std::string(wide + 2 - s.size(), ' ');
  };
  out << pad("req");
  for (const std::string& c : columns) out << pad(c);
  out << "\n";
  for (const auto& row : matrix.at("rows")) {
    out << pad("R" + std::to_string(row.at("requirement").get<int>()));
    for (const std::string& c : columns) {
      std::string g = row.at("grades").at(c).get<std::string>();
      std::string mark = g == "full" ? "x" : g == "partial" ? "o" : "-";
      out << pad(mark);
    }
    out << "  " << row.at("checks").get<std::string>() << "\n";
  }
  out << "\nlegend: x = full, o = partial, - = none\n";
  if (matrix.contains("reference_full_cells_pass")) {
    out << "reference x-cells " << (matrix.at("reference_full_cells_pass").get<bool>() ? "reproduced" : "NOT reproduced")
        << "\n";
  }
  const auto& census = report.at("census");
  const auto& f = census.at("formulas");
  out << "\nadded-stage gate counts:\n";
  out << "  T1: " << f.at("t1_added").at("measured_cn").get<int>() << " CN + "
      << f.at("t1_added").at("measured_h").get<int>() << " H (formula 2(k-1)CN+2H = "
      << f.at("t1_added").at("formula_cn").get<int>() << " CN + 2 H"
      << (f.at("t1_added").at("parity_fix_cn").get<bool>() ? ", incl. parity-fix CN" : "") << ")\n";
  out << "  T1+T2: " << f.at("t1_t2_added").at("measured_cn").get<int>() << " CN + "
      << f.at("t1_t2_added").at("measured_h").get<int>() << " H (formula 4(k-1)CN+4H = "
      << f.at("t1_t2_added").at("formula_cn").get<int>() << " CN + 4 H)\n";
  out << "  T5+T6 Hadamards: " << f.at("t5_t6_hadamards").at("measured").get<int>()
      << " (text formula 4kH = " << f.at("t5_t6_hadamards").at("text_formula").get<int>()
      << ", drawn 4(k+1)H = " << f.at("t5_t6_hadamards").at("drawn").get<int>()
      << (f.at("t5_t6_hadamards").at("text_matches_drawn").get<bool>() ? ")" : "; text and figure disagree)")
      << "\n";
  out << "  QBIST32: " << census.at("qbist32_mcx").get<int>() << " MCX ("
      << (census.at("qbist32_exact").get<bool>() ? "exact minimum" : "degree-truncation fallback, not exact")
      << ")\n";
  const auto& ex = report.at("experiments");
  out << "\nexperiment counts: standard " << ex.at("standard").get<std::size_t>() << ", alternative "
      << ex.at("alternative").get<std::size_t>() << ", classical bound "
      << ex.at("classical_bound").get<std::string>() << "\n";
  if (report.contains("multi_fault")) {
    const auto& m = report.at("multi_fault");
    out << "\nmulti-fault experiment: " << m.at("detected").get<int>() << "/"
        << m.at("trials").get<int>() << " detected (" << m.at("cancelled_to_identity").get<int>()
        << " cancelled to identity, excluded), fraction "
        << m.at("fraction_excluding_cancelled").get<double>() << "\n";
  }
  return out.str();
}

}  // namespace qorc::campaign
