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

// Acceptance suite: one pass/fail line per criterion; exits with the number
// of failed criteria. Tolerances are pinned at 1e-9 throughout.

#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qorc/campaign.hpp"
#include "qorc/boolfn.hpp"
#include "qorc/circuit.hpp"
#include "qorc/sim.hpp"
#include "qorc/testgen.hpp"

using namespace qorc;

namespace {

constexpr double kTol = 1e-9;

boolfn::BooleanFunction example_function() {
  return boolfn::BooleanFunction::from_minterms(4, {2, 4, 5, 8, 9, 15});
}

circuit::Circuit example_oracle() {
  return circuit::build_oracle(boolfn::pprm_expand(example_function()));
}

struct Check {
  std::string detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// 1. The synthesized oracle puts the truth table's signs on |+>^4 (x) |->.
Check criterion_oracle_phase_table() {
  Check c;
  sim::StateVector in(5);
  const double mag = std::pow(2.0, -2.5);
  for (std::size_t x = 0; x < 16; ++x) {
    in.amps[2 * x] = mag;
    in.amps[2 * x + 1] = -mag;
  }
  sim::StateVector out = sim::apply(example_oracle(), in);
  const std::set<std::size_t> negatives = {0b0010, 0b0100, 0b0101, 0b1000, 0b1001, 0b1111};
  for (std::size_t x = 0; x < 16; ++x) {
    double sign = negatives.count(x) ? -1.0 : 1.0;
    c.expect(std::abs(out.amps[2 * x] - sign * mag) <= kTol,
             "amplitude of minterm " + std::to_string(x));
    c.expect(std::abs(out.amps[2 * x + 1] + sign * mag) <= kTol,
             "target amplitude of minterm " + std::to_string(x));
  }
  boolfn::SignVector sv = sim::phase_vector(out, kTol);
  c.expect(boolfn::sign_decode(sv) == example_function(), "sign vector decodes to f");
  return c;
}

// 2. Stage-by-stage T1 trace: the entangled branch's target toggles per gate,
//    and the test ends in 00000 with probability 1.
Check criterion_t1_stage_trace() {
  Check c;
  circuit::Circuit oracle = example_oracle();
  auto plans = testgen::gen_t1_t2(oracle);
  const testgen::TestPlan& t1 = plans[0];
  sim::StateVector s = sim::apply(t1.prep, sim::prepare(5, t1.init));
  const double r = std::sqrt(0.5);
  c.expect(std::abs(s.amps[0b00000] - r) <= kTol && std::abs(s.amps[0b11110] - r) <= kTol,
           "QBIST11 output");
  for (std::size_t g = 0; g < oracle.size(); ++g) {
    sim::apply_gate_in_place(s, oracle.gates[g]);
    const std::size_t toggled = (g + 1) % 2;  // p0 -> 1, p1 -> 0, ...
    std::size_t hi = 0b11110 | toggled;
    c.expect(std::abs(s.amps[0b00000] - r) <= kTol && std::abs(s.amps[hi] - r) <= kTol,
             "stage p" + std::to_string(g));
    double rest = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != 0b00000 && i != hi) rest += std::norm(s.amps[i]);
    }
    c.expect(rest <= kTol, "stray amplitude after p" + std::to_string(g));
  }
  sim::OutcomeDistribution dist = testgen::run_plan(t1, oracle);
  c.expect(std::abs(dist.at("00000") - 1.0) <= kTol, "final outcome 00000");
  return c;
}

// 3. All six standard and all 13 alternative plans are deterministic.
Check criterion_suite_determinism() {
  Check c;
  circuit::Circuit oracle = example_oracle();
  auto standard = testgen::gen_standard_suite(oracle, example_function());
  auto alternative = testgen::gen_alternative_suite(oracle, example_function());
  c.expect(standard.size() == 6, "standard suite size");
  c.expect(alternative.size() == 13, "alternative suite size");
  for (const auto& suite : {standard, alternative}) {
    for (const testgen::TestPlan& plan : suite) {
      double p = testgen::run_plan(plan, oracle).at(plan.expected);
      c.expect(std::abs(p - 1.0) <= kTol, plan.name + " determinism");
    }
  }
  return c;
}

// 4. Exhaustive k=3 fault coverage plus the worked example's matrix.
Check criterion_fault_coverage() {
  Check c;
  for (uint64_t bits = 0; bits < 256; ++bits) {
    boolfn::BooleanFunction f = boolfn::BooleanFunction::from_word(3, bits);
    circuit::Circuit oracle = circuit::build_oracle(boolfn::pprm_expand(f));
    auto plans = testgen::gen_standard_suite(oracle, f);
    for (std::size_t b = 0; b <= oracle.size(); ++b) {
      for (int q = 0; q < oracle.width; ++q) {
        const bool target_wire = q == oracle.width - 1;
        for (char axis : {'X', 'Y'}) {
          sim::FaultSpec fault = sim::FaultSpec::pauli(axis, b, q, 1.0);
          double d =
              std::max(campaign::detection_probability(plans[0], fault, oracle).probability,
                       campaign::detection_probability(plans[1], fault, oracle).probability);
          if (target_wire) {
            c.expect(d > kTol, "T1uT2 target-wire bit flip, f=" + std::to_string(bits));
          } else {
            c.expect(std::abs(d - 1.0) <= kTol, "T1uT2 bit flip, f=" + std::to_string(bits));
          }
        }
        for (char axis : {'Z', 'Y'}) {
          sim::FaultSpec fault = sim::FaultSpec::pauli(axis, b, q, 1.0);
          double d =
              std::max(campaign::detection_probability(plans[4], fault, oracle).probability,
                       campaign::detection_probability(plans[5], fault, oracle).probability);
          c.expect(std::abs(d - 1.0) <= kTol, "T5uT6 phase flip, f=" + std::to_string(bits));
        }
      }
    }
  }
  // spot checks at k=4 on the worked example
  {
    circuit::Circuit oracle = example_oracle();
    auto plans = testgen::gen_standard_suite(oracle, example_function());
    for (std::size_t b : {std::size_t{0}, oracle.size() / 2, oracle.size()}) {
      for (int q = 0; q < 4; ++q) {
        double dx =
            std::max(campaign::detection_probability(plans[0],
                                                     sim::FaultSpec::pauli('X', b, q, 1.0), oracle)
                         .probability,
                     campaign::detection_probability(plans[1],
                                                     sim::FaultSpec::pauli('X', b, q, 1.0), oracle)
                         .probability);
        c.expect(std::abs(dx - 1.0) <= kTol, "k=4 bit flip spot check");
        double dz =
            std::max(campaign::detection_probability(plans[4],
                                                     sim::FaultSpec::pauli('Z', b, q, 1.0), oracle)
                         .probability,
                     campaign::detection_probability(plans[5],
                                                     sim::FaultSpec::pauli('Z', b, q, 1.0), oracle)
                         .probability);
        c.expect(std::abs(dz - 1.0) <= kTol, "k=4 phase flip spot check");
      }
    }
  }
  // the requirement/test matrix of the worked example
  campaign::FaultModelSet models;
  models.init = true;
  models.measure = true;
  campaign::CampaignResult result = campaign::run_campaign(
      example_oracle(), example_function(), campaign::SuiteKind::Standard, models);
  for (const campaign::CellRef& cell : campaign::reference_full_cells()) {
    c.expect(result.matrix.at(cell.req, cell.column) == campaign::Grade::Full,
             std::string("x-cell req") + std::to_string(cell.req) + "/" + cell.column);
  }
  for (const campaign::CellRef& cell : campaign::reference_partial_cells()) {
    c.expect(result.matrix.at(cell.req, cell.column) != campaign::Grade::None,
             std::string("o-cell req") + std::to_string(cell.req) + "/" + cell.column);
  }
  return c;
}

// 5. T3's pre-disentanglement response is a product iff the function is affine.
Check criterion_separability() {
  Check c;
  int affine_count = 0;
  for (uint64_t bits = 0; bits < 256; ++bits) {
    boolfn::BooleanFunction f = boolfn::BooleanFunction::from_word(3, bits);
    circuit::Circuit oracle = circuit::build_oracle(boolfn::pprm_expand(f));
    sim::StateVector in(4);
    const double mag = std::pow(2.0, -2.0);
    for (std::size_t x = 0; x < 8; ++x) {
      in.amps[2 * x] = mag;
      in.amps[2 * x + 1] = -mag;
    }
    sim::StateVector out = sim::apply(oracle, in);
    bool product = sim::is_product(out, kTol).product;
    bool affine = boolfn::is_affine(f).has_value();
    if (affine) ++affine_count;
    c.expect(product == affine, "separability vs affinity for f=" + std::to_string(bits));
  }
  c.expect(affine_count == 16, "affine count");
  return c;
}

// 6. BFS-exact ESOP bound and the optimality of the selected residue.
Check criterion_esop_bound() {
  Check c;
  auto affine = boolfn::enumerate_affine(3);
  for (uint64_t bits = 0; bits < 256; ++bits) {
    boolfn::BooleanFunction f = boolfn::BooleanFunction::from_word(3, bits);
    int base = boolfn::esop_min_cubes(f).cost;
    int best = -1;
    for (const boolfn::AffineCoeffs& a : affine) {
      int cost = boolfn::esop_min_cubes(f ^ a.to_function(3)).cost;
      c.expect(cost >= base - 3, "bound for f=" + std::to_string(bits));
      if (best < 0 || cost < best) best = cost;
    }
    boolfn::BistResidue r = boolfn::bist_residue(f);
    c.expect(static_cast<int>(r.esop.cubes.size()) == best,
             "residue optimality for f=" + std::to_string(bits));
  }
  return c;
}

// 7. The worked example's disentangler: two gates flipping 1110 and 0011, and
//    the T3 response becomes a product with |-> on the target.
Check criterion_qbist32() {
  Check c;
  circuit::Circuit stage = testgen::synthesize_qbist32(example_function());
  c.expect(stage.size() == 2, "two disentangling gates");
  std::set<std::size_t> flipped;
  for (std::size_t x = 0; x < 16; ++x) {
    int toggles = 0;
    for (const circuit::Gate& g : stage.gates) toggles += g.active_on(x << 1, 5) ? 1 : 0;
    if (toggles % 2) flipped.insert(x);
  }
  c.expect(flipped == std::set<std::size_t>{0b0011, 0b1110}, "flipped minterms");

  sim::StateVector in(5);
  const double mag = std::pow(2.0, -2.5);
  for (std::size_t x = 0; x < 16; ++x) {
    in.amps[2 * x] = mag;
    in.amps[2 * x + 1] = -mag;
  }
  sim::StateVector pre = sim::apply(example_oracle(), in);
  c.expect(!sim::is_product(pre, kTol).product, "entangled before the stage");
  sim::ProductCheck check = sim::is_product(sim::apply(stage, pre), kTol);
  c.expect(check.product, "product after the stage");
  if (check.product) {
    amplitude ratio = check.factors[4][1] / check.factors[4][0];
    c.expect(std::abs(ratio + 1.0) <= kTol, "target factor |->");
  }
  return c;
}

// 8. 12/12 characterization for clean 1..4-CN gates; every certain Pauli
//    corruption of a 2-CN gate fails at least one case.
Check criterion_characterization() {
  Check c;
  for (int arity = 1; arity <= 4; ++arity) {
    std::vector<circuit::Control> controls;
    for (int q = 0; q < arity; ++q) controls.push_back({q, true});
    testgen::CharacterizationReport report =
        testgen::characterize_gate(circuit::Gate::mcx(controls, arity));
    c.expect(report.cases.size() == 12 && report.all_pass(),
             "clean " + std::to_string(arity) + "-CN");
  }
  circuit::Gate nominal = circuit::Gate::mcx({{0, true}, {1, true}}, 2);
  circuit::Circuit clean(3);
  clean.gates.push_back(nominal);
  for (std::size_t b = 0; b <= 1; ++b) {
    for (int q = 0; q < 3; ++q) {
      for (char axis : {'X', 'Y', 'Z'}) {
        testgen::CharacterizationReport report = testgen::characterize_gate(
            nominal, clean, {sim::FaultSpec::pauli(axis, b, q, 1.0)});
        c.expect(report.passed() < 12, std::string("corruption ") + axis + " at wire(b=" +
                                           std::to_string(b) + ",q=" + std::to_string(q) + ")");
      }
    }
  }
  return c;
}

// 9. Suite sizes and the stage censuses against the stated formulas.
Check criterion_counts() {
  Check c;
  std::mt19937_64 rng(97);
  c.expect(testgen::gen_standard_suite(example_oracle(), example_function()).size() == 6,
           "standard suite size");
  for (int k = 2; k <= 8; ++k) {
    boolfn::BooleanFunction f(k);
    for (auto& b : f.table) b = rng() & 1u;
    circuit::Circuit oracle = circuit::build_oracle(boolfn::pprm_expand(f));
    std::size_t expected = 5 + 4 * static_cast<std::size_t>((k + 1) / 2);
    c.expect(testgen::gen_alternative_suite(oracle, f).size() == expected,
             "alternative size for k=" + std::to_string(k));
  }
  campaign::ComplexityReport report =
      campaign::complexity_report(example_oracle(), example_function(), 2);
  c.expect(report.t1_formula_cn == 6 && report.t1_formula_h == 2, "T1 formula 2(k-1)CN+2H");
  c.expect(report.t1_measured_cn == report.t1_formula_cn + 1 && report.parity_fix_cn,
           "T1 measured census vs formula");
  c.expect(report.t12_formula_cn == 12 && report.t12_measured_cn == 14,
           "T1/T2 pair census vs 4(k-1)CN+4H");
  c.expect(report.t12_measured_h == 4, "T1/T2 Hadamard count");
  c.expect(report.t56_drawn_h == 20 && report.t56_measured_h == 20, "drawn Hadamard count");
  c.expect(report.t56_text_h == 16 && !report.t56_text_matches_drawn,
           "text formula mismatch surfaced");
  c.expect(report.classical_bound == "12", "classical bound k+4+2n_e");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* description;
    Check (*run)();
  };
  const Criterion criteria[] = {
      {"oracle phase table matches the truth table's sign pattern", criterion_oracle_phase_table},
      {"T1 stage trace toggles the target per gate and ends in 00000", criterion_t1_stage_trace},
      {"all standard and alternative tests are deterministic", criterion_suite_determinism},
      {"single Pauli faults are covered (exhaustive k=3) and the results table is reproduced",
       criterion_fault_coverage},
      {"T3 responses are separable exactly for the 16 affine functions", criterion_separability},
      {"ESOP cost drops at most k under affine XOR and the residue is minimal",
       criterion_esop_bound},
      {"the example disentangler flips 1110/0011 and yields a |-> product", criterion_qbist32},
      {"12/12 gate characterization, and every Pauli corruption fails a case",
       criterion_characterization},
      {"suite sizes and stage censuses match the stated formulas", criterion_counts},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    Check result = criterion.run();
    if (result.ok) {
      std::printf("[PASS] %d. %s\n", index, criterion.description);
    } else {
      ++failures;
      std::printf("[FAIL] %d. %s (%s)\n", index, criterion.description, result.detail.c_str());
    }
  }
  std::printf("%d/9 acceptance criteria pass\n", 9 - failures);
  return failures;
}
