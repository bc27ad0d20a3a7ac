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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qorc/campaign.hpp"
#include "qorc/boolfn.hpp"
#include "qorc/circuit.hpp"
#include "qorc/reference.hpp"
#include "qorc/sim.hpp"
#include "qorc/testgen.hpp"

namespace {

// exit-code contract: 0 ok, 2 input error, 3 coverage failure
constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCoverage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qorc::ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw qorc::Error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

std::string term_to_string(uint32_t mask, int k) {
  if (mask == 0) return "1";
  std::string s;
  for (int v = 0; v < k; ++v) {
    if (mask & (1u << v)) s += "x" + std::to_string(v + 1);
  }
  return s;
}

std::string cube_to_string(const qorc::boolfn::Cube& c) {
  if ((c.pos | c.neg) == 0) return "1";
  std::string s;
  for (int v = 0; v < c.k; ++v) {
    if (c.pos & (1u << v)) s += "x" + std::to_string(v + 1);
    if (c.neg & (1u << v)) s += "~x" + std::to_string(v + 1);
  }
  return s;
}

std::string affine_to_string(const qorc::boolfn::AffineCoeffs& a, int k) {
  std::string s;
  if (a.c0) s = "1";
  for (int v = 0; v < k; ++v) {
    if (a.mask & (1u << v)) {
      if (!s.empty()) s += " (+) ";
      s += "x" + std::to_string(v + 1);
    }
  }
  return s.empty() ? "0" : s;
}

qorc::sim::ExecPolicy parse_policy(const std::string& s) {
  if (s == "serial") return qorc::sim::ExecPolicy::Serial;
  if (s == "parallel") return qorc::sim::ExecPolicy::Parallel;
  return qorc::sim::ExecPolicy::Auto;
}

struct CampaignCli {
  std::string circuit_path;
  std::string tests_path;
  std::string function_path;
  std::string out_path = "-";
  std::string fault_models = "pauli,init,measure";
  std::vector<double> pauli_ps = {1.0};
  double init_bias = 1.0;
  double measure_bias = 1.0;
  bool include_qbist = false;
  std::optional<int> n_e;
  int multi_faults = 0;
  int multi_trials = 200;
  std::uint64_t seed = 0;
  double tolerance = qorc::kDefaultTolerance;
};

int run_campaign_cmd(const CampaignCli& args) {
  using namespace qorc;
  circuit::Circuit oracle = circuit::parse_circuit(read_file(args.circuit_path));
  circuit::validate_oracle_shape(oracle);
  boolfn::BooleanFunction f = circuit::realized_function(oracle);
  if (!args.function_path.empty()) {
    boolfn::BooleanFunction declared = boolfn::parse_function(read_file(args.function_path));
    if (!(declared == f)) throw ParseError("function file does not match the circuit");
  }
  testgen::PlanFile plan_file = testgen::parse_plans(read_file(args.tests_path));
  if (plan_file.width != oracle.width)
    throw ParseError("tests file width does not match the circuit");
  for (const testgen::TestPlan& plan : plan_file.plans) {
    sim::OutcomeDistribution dist = testgen::run_plan(plan, oracle);
    if (dist.at(plan.expected) < 1.0 - args.tolerance)
      throw ParseError("plan " + plan.name + " does not reach its expected outcome on this circuit");
  }
  campaign::SuiteKind suite = plan_file.suite == "alternative"
                                  ? campaign::SuiteKind::Alternative
                                  : campaign::SuiteKind::Standard;

  campaign::FaultModelSet models;
  models.pauli = args.fault_models.find("pauli") != std::string::npos;
  models.init = args.fault_models.find("init") != std::string::npos;
  models.measure = args.fault_models.find("measure") != std::string::npos;
  models.pauli_ps = args.pauli_ps;
  models.init_bias = args.init_bias;
  models.measure_bias = args.measure_bias;

  campaign::CampaignOptions opts;
  opts.include_qbist = args.include_qbist;
  opts.tolerance = args.tolerance;

  campaign::CampaignResult result =
      campaign::run_campaign_with_plans(oracle, plan_file.plans, suite, models, opts);
  campaign::ComplexityReport complexity = campaign::complexity_report(oracle, f, args.n_e);
  std::optional<campaign::MultiFaultReport> multi;
  if (args.multi_faults > 0) {
    multi = campaign::multi_fault_experiment(oracle, f, suite, args.multi_faults,
                                             args.multi_trials, args.seed);
  }
  nlohmann::ordered_json report = campaign::report_json(result, complexity, multi);
  write_file_atomic(args.out_path, report.dump(2) + "\n");
  if (args.include_qbist) {
    std::size_t flagged = 0;
    for (const auto& rec : result.records) flagged += rec.in_qbist ? 1 : 0;
    std::cerr << "included " << flagged << " QBIST-internal fault records (excluded by default)\n";
  }
  if (suite == campaign::SuiteKind::Standard) {
    std::vector<std::string> failing = campaign::failing_reference_cells(result.matrix);
    if (!failing.empty()) {
      std::cerr << "coverage regression: reference cells not full:";
      for (const std::string& c : failing) std::cerr << " " << c;
      std::cerr << "\n";
      return kExitCoverage;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"test pattern generation for k-CN oracle circuits"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "expand a truth table to PPRM and emit the oracle circuit");
  std::string synth_fn, synth_out = "-";
  synth->add_option("--function", synth_fn, "truth table file")->required();
  synth->add_option("--out", synth_out, "circuit file ('-' for stdout)");

  // gen-tests
  auto* gen = app.add_subcommand("gen-tests", "generate a test suite for an oracle circuit");
  std::string gen_circuit, gen_suite = "standard", gen_out = "-";
  gen->add_option("--circuit", gen_circuit, "oracle circuit file")->required();
  gen->add_option("--suite", gen_suite, "standard | alternative")
      ->check(CLI::IsMember({"standard", "alternative"}));
  gen->add_option("--out", gen_out, "test plan file ('-' for stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a circuit or verify a test suite");
  std::string sim_circuit, sim_init, sim_tests, sim_policy = "auto";
  std::vector<std::string> sim_faults;
  std::vector<int> sim_bell;
  double sim_tolerance = qorc::kDefaultTolerance;
  simulate->add_option("--circuit", sim_circuit, "circuit file")->required();
  simulate->add_option("--tolerance", sim_tolerance, "override the 1e-9 tolerance");
  simulate->add_option("--init", sim_init, "initial basis state");
  simulate->add_option("--tests", sim_tests, "test plan file to verify fault-free");
  simulate->add_option("--fault", sim_faults, "fault spec, e.g. pauli,axis=X,w=0,q=1,p=1");
  simulate->add_option("--bell", sim_bell, "two qubits measured in the Bell basis")->expected(2);
  simulate->add_option("--policy", sim_policy, "auto | serial | parallel")
      ->check(CLI::IsMember({"auto", "serial", "parallel"}));

  // characterize
  auto* charac = app.add_subcommand("characterize", "probe a k-CN gate's 12 characteristic operations");
  int charac_arity = 0;
  std::string charac_gate;
  std::vector<std::string> charac_faults;
  bool charac_json = false;
  charac->add_option("--arity", charac_arity, "positive-control k-CN with this many controls");
  charac->add_option("--gate", charac_gate, "gate line, e.g. 'MCX t=q2 c=q0+,q1+'");
  charac->add_option("--fault", charac_faults, "fault spec applied to the gate under test");
  charac->add_flag("--json", charac_json, "emit JSON instead of text");

  // campaign
  auto* camp = app.add_subcommand("campaign", "fault campaign and requirement coverage matrix");
  CampaignCli camp_args;
  camp->add_option("--circuit", camp_args.circuit_path, "oracle circuit file")->required();
  camp->add_option("--tests", camp_args.tests_path, "test plan file")->required();
  camp->add_option("--function", camp_args.function_path, "truth table file (consistency check)");
  camp->add_option("--out", camp_args.out_path, "report JSON file ('-' for stdout)");
  camp->add_option("--faults", camp_args.fault_models, "comma list of pauli,init,measure");
  camp->add_option("--pauli-p", camp_args.pauli_ps, "placement probabilities to enumerate");
  camp->add_option("--init-bias", camp_args.init_bias, "initialization bias b");
  camp->add_option("--measure-bias", camp_args.measure_bias, "measurement bias b");
  camp->add_flag("--include-qbist", camp_args.include_qbist,
                 "also record faults inside the QBIST stages");
  int camp_ne = -1;
  camp->add_option("--ne", camp_ne, "n_e for the classical k+4+2n_e bound");
  camp->add_option("--multi", camp_args.multi_faults, "run the multi-fault experiment with this many faults");
  camp->add_option("--trials", camp_args.multi_trials, "multi-fault trials");
  camp->add_option("--seed", camp_args.seed, "RNG seed for the multi-fault experiment");
  camp->add_option("--tolerance", camp_args.tolerance, "override the 1e-9 tolerance");

  // esop
  auto* esop = app.add_subcommand("esop", "exact ESOP cost, affine verdict and BIST residue");
  std::string esop_fn;
  esop->add_option("--function", esop_fn, "truth table file")->required();

  // report
  auto* rep = app.add_subcommand("report", "render a campaign report as text");
  std::string rep_in;
  rep->add_option("--in", rep_in, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*synth) {
      qorc::boolfn::BooleanFunction f = qorc::boolfn::parse_function(read_file(synth_fn));
      qorc::boolfn::PprmExpansion p = qorc::boolfn::pprm_expand(f);
      qorc::circuit::Circuit oracle = qorc::circuit::build_oracle(p);
      write_file_atomic(synth_out, qorc::circuit::print_circuit(oracle));
      std::cerr << "pprm: c0=" << (p.constant ? 1 : 0) << " terms=";
      if (p.terms.empty()) std::cerr << "(none)";
      for (std::size_t i = 0; i < p.terms.size(); ++i)
        std::cerr << (i ? "," : "") << term_to_string(p.terms[i], f.k);
      std::cerr << "\n";
      auto affine = qorc::boolfn::is_affine(f);
      std::cerr << "affine: "
                << (affine ? "yes (" + affine_to_string(*affine, f.k) + ")" : std::string("no"))
                << "\n";
      std::cerr << "gates: " << oracle.size() << ", width: " << oracle.width << "\n";
      return kExitOk;
    }

    if (*gen) {
      qorc::circuit::Circuit oracle = qorc::circuit::parse_circuit(read_file(gen_circuit));
      qorc::circuit::validate_oracle_shape(oracle);
      qorc::boolfn::BooleanFunction f = qorc::circuit::realized_function(oracle);
      std::vector<qorc::testgen::TestPlan> plans =
          gen_suite == "alternative" ? qorc::testgen::gen_alternative_suite(oracle, f)
                                     : qorc::testgen::gen_standard_suite(oracle, f);
      write_file_atomic(gen_out, qorc::testgen::print_plans(plans, gen_suite, oracle.width - 1));
      std::cerr << "suite " << gen_suite << ": " << plans.size() << " plans\n";
      return kExitOk;
    }

    if (*simulate) {
      qorc::circuit::Circuit c = qorc::circuit::parse_circuit(read_file(sim_circuit));
      qorc::sim::ExecPolicy policy = parse_policy(sim_policy);
      if (!sim_tests.empty()) {
        qorc::testgen::PlanFile plans = qorc::testgen::parse_plans(read_file(sim_tests));
        qorc::circuit::validate_oracle_shape(c);
        bool all_ok = true;
        for (const qorc::testgen::TestPlan& plan : plans.plans) {
          qorc::sim::OutcomeDistribution dist = qorc::testgen::run_plan(plan, c);
          double p = dist.at(plan.expected);
          bool ok = p >= 1.0 - sim_tolerance;
          all_ok = all_ok && ok;
          std::cout << (ok ? "ok   " : "FAIL ") << plan.name << " expected " << plan.expected
                    << " p=" << p << "\n";
        }
        return all_ok ? kExitOk : kExitCoverage;
      }
      if (sim_init.empty()) throw qorc::ParseError("simulate needs --init or --tests");
      std::vector<qorc::sim::FaultSpec> faults, measure_faults;
      for (const std::string& fs : sim_faults) {
        qorc::sim::FaultSpec f = qorc::sim::parse_fault(fs);
        f.validate(c);
        (f.model == qorc::sim::FaultSpec::Model::MeasureBias ? measure_faults : faults).push_back(f);
      }
      qorc::sim::Ensemble ensemble =
          qorc::sim::apply_faulty(c, qorc::sim::prepare(c.width, sim_init), faults, policy);
      qorc::sim::OutcomeDistribution dist =
          sim_bell.size() == 2 ? qorc::sim::bell_measure(ensemble, sim_bell[0], sim_bell[1], measure_faults)
                               : qorc::sim::measure_distribution(ensemble, measure_faults);
      for (const auto& [label, p] : dist.probs) std::cout << label << " " << p << "\n";
      return kExitOk;
    }

    if (*charac) {
      qorc::circuit::Gate nominal;
      if (!charac_gate.empty()) {
        qorc::circuit::Circuit parsed =
            qorc::circuit::parse_circuit("# width: 24\n" + charac_gate + "\n");
        if (parsed.size() != 1 || parsed.gates[0].kind != qorc::circuit::Gate::Kind::MCX)
          throw qorc::ParseError("--gate must be a single MCX line");
        nominal = parsed.gates[0];
      } else if (charac_arity >= 1) {
        std::vector<qorc::circuit::Control> controls;
        for (int q = 0; q < charac_arity; ++q) controls.push_back({q, true});
        nominal = qorc::circuit::Gate::mcx(controls, charac_arity);
      } else {
        throw qorc::ParseError("characterize needs --arity or --gate");
      }
      int width = nominal.target;
      for (const auto& ctl : nominal.controls) width = std::max(width, ctl.qubit);
      ++width;
      qorc::circuit::Circuit under_test(width);
      under_test.gates.push_back(nominal);
      std::vector<qorc::sim::FaultSpec> faults;
      for (const std::string& fs : charac_faults) {
        qorc::sim::FaultSpec f = qorc::sim::parse_fault(fs);
        f.validate(under_test);
        faults.push_back(f);
      }
      qorc::testgen::CharacterizationReport report =
          qorc::testgen::characterize_gate(nominal, under_test, faults);
      if (charac_json) {
        nlohmann::ordered_json j;
        j["cases"] = nlohmann::ordered_json::array();
        for (const auto& cc : report.cases) {
          j["cases"].push_back({{"name", cc.name},
                                {"kind", cc.classical ? "classical" : "quantum"},
                                {"pass", cc.pass},
                                {"expected", cc.expected},
                                {"observed", cc.observed}});
        }
        j["passed"] = report.passed();
        j["total"] = report.cases.size();
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& cc : report.cases) {
          std::cout << (cc.pass ? "pass " : "FAIL ") << cc.name << "\n";
          if (!cc.pass)
            std::cout << "     expected: " << cc.expected << "\n     observed: " << cc.observed << "\n";
        }
        std::cout << report.passed() << "/" << report.cases.size() << " cases pass\n";
      }
      return kExitOk;
    }

    if (*camp) {
      if (camp_ne >= 0) camp_args.n_e = camp_ne;
      return run_campaign_cmd(camp_args);
    }

    if (*esop) {
      qorc::boolfn::BooleanFunction f = qorc::boolfn::parse_function(read_file(esop_fn));
      auto affine = qorc::boolfn::is_affine(f);
      std::cout << "affine: "
                << (affine ? "yes (" + affine_to_string(*affine, f.k) + ")" : std::string("no"))
                << "\n";
      if (f.k <= 4) {
        qorc::boolfn::EsopMin m = qorc::boolfn::esop_min_cubes(f);
        std::cout << "esop_min_cubes: " << m.cost << "\nwitness:";
        if (m.witness.cubes.empty()) std::cout << " (empty)";
        for (const auto& cube : m.witness.cubes) std::cout << " " << cube_to_string(cube);
        std::cout << "\n";
      } else {
        std::cout << "esop_min_cubes: skipped (exact mode needs k <= 4)\n";
      }
      qorc::boolfn::BistResidue r = qorc::boolfn::bist_residue(f);
      std::cout << "bist affine: " << affine_to_string(r.affine, f.k) << "\n";
      std::cout << "bist cubes (" << (r.exact ? "exact" : "degree-truncation, not exact") << "):";
      if (r.esop.cubes.empty()) std::cout << " (empty)";
      for (const auto& cube : r.esop.cubes) std::cout << " " << cube_to_string(cube);
      std::cout << "\n";
      return kExitOk;
    }

    if (*rep) {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(read_file(rep_in));
      std::cout << qorc::campaign::render_report_text(j);
      return kExitOk;
    }
  } catch (const qorc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
