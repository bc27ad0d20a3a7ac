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

#include "qorc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qorc::sim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Below this width the OpenMP fork overhead dwarfs the amplitude loop.
constexpr int kParallelWidthThreshold = 14;

bool run_parallel(int width, ExecPolicy policy) {
#ifdef _OPENMP
  switch (policy) {
    case ExecPolicy::Serial: return false;
    case ExecPolicy::Parallel: return true;
    case ExecPolicy::Auto: return width >= kParallelWidthThreshold;
  }
#endif
  (void)width;
  (void)policy;
  return false;
}

}  // namespace

StateVector::StateVector(int width_) : width(width_) {
  if (width_ < 1 || width_ > kMaxWidth)
    throw Error("state width out of range 1.." + std::to_string(kMaxWidth));
  amps.assign(std::size_t{1} << width_, amplitude{0.0, 0.0});
}

double StateVector::norm() const {
  double n = 0.0;
  for (const amplitude& a : amps) n += std::norm(a);
  return std::sqrt(n);
}

StateVector prepare(int width, std::string_view basis) {
  if (static_cast<int>(basis.size()) != width)
    throw Error("basis string length does not match width");
  StateVector s(width);
  std::size_t index = 0;
  for (int q = 0; q < width; ++q) {
    char c = basis[q];
    if (c != '0' && c != '1') throw Error("basis string must be 0/1");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  s.amps[index] = 1.0;
  return s;
}

namespace {

// Kernels iterate over the 2^(w-1) index pairs that differ in the gate qubit.
// `bitpos` is the bit position of that qubit within the basis index.

void kernel_h(std::vector<amplitude>& a, int bitpos, bool parallel) {
  const std::size_t mask = std::size_t{1} << bitpos;
  const std::size_t low = mask - 1;
  const std::int64_t pairs = static_cast<std::int64_t>(a.size() / 2);
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t i = 0; i < pairs; ++i) {
    std::size_t idx0 = ((static_cast<std::size_t>(i) & ~low) << 1) |
                       (static_cast<std::size_t>(i) & low);
    std::size_t idx1 = idx0 | mask;
    amplitude a0 = a[idx0], a1 = a[idx1];
    a[idx0] = (a0 + a1) * kInvSqrt2;
    a[idx1] = (a0 - a1) * kInvSqrt2;
  }
}

void kernel_x(std::vector<amplitude>& a, int bitpos, bool parallel) {
  const std::size_t mask = std::size_t{1} << bitpos;
  const std::size_t low = mask - 1;
  const std::int64_t pairs = static_cast<std::int64_t>(a.size() / 2);
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t i = 0; i < pairs; ++i) {
    std::size_t idx0 = ((static_cast<std::size_t>(i) & ~low) << 1) |
                       (static_cast<std::size_t>(i) & low);
    std::swap(a[idx0], a[idx0 | mask]);
  }
}

// sigma_y as in the fault model definition: i|0><1| - i|1><0| (global phase -i
// away from X*Z; detection probabilities are unaffected).
void kernel_y(std::vector<amplitude>& a, int bitpos, bool parallel) {
  const std::size_t mask = std::size_t{1} << bitpos;
  const std::size_t low = mask - 1;
  const std::int64_t pairs = static_cast<std::int64_t>(a.size() / 2);
  const amplitude pi{0.0, 1.0};
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t i = 0; i < pairs; ++i) {
    std::size_t idx0 = ((static_cast<std::size_t>(i) & ~low) << 1) |
                       (static_cast<std::size_t>(i) & low);
    std::size_t idx1 = idx0 | mask;
    amplitude a0 = a[idx0], a1 = a[idx1];
    a[idx0] = pi * a1;
    a[idx1] = -pi * a0;
  }
}

void kernel_z(std::vector<amplitude>& a, int bitpos, bool parallel) {
  const std::size_t mask = std::size_t{1} << bitpos;
  const std::int64_t n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(i) & mask) a[i] = -a[i];
  }
}

void kernel_mcx(std::vector<amplitude>& a, int width, const circuit::Gate& g, bool parallel) {
  std::size_t ctrl_mask = 0, ctrl_want = 0;
  for (const circuit::Control& c : g.controls) {
    std::size_t bit = std::size_t{1} << (width - 1 - c.qubit);
    ctrl_mask |= bit;
    if (c.positive) ctrl_want |= bit;
  }
  const std::size_t tmask = std::size_t{1} << (width - 1 - g.target);
  const std::int64_t n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for if (parallel) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    std::size_t idx = static_cast<std::size_t>(i);
    if ((idx & tmask) == 0 && (idx & ctrl_mask) == ctrl_want) {
      // control predicate is target-independent, so the partner matches too
      std::swap(a[idx], a[idx | tmask]);
    }
  }
}

}  // namespace

void apply_gate_in_place(StateVector& s, const circuit::Gate& g, ExecPolicy policy) {
  bool parallel = run_parallel(s.width, policy);
  int bitpos = s.width - 1 - g.target;
  switch (g.kind) {
    case circuit::Gate::Kind::H: kernel_h(s.amps, bitpos, parallel); return;
    case circuit::Gate::Kind::X: kernel_x(s.amps, bitpos, parallel); return;
    case circuit::Gate::Kind::Y: kernel_y(s.amps, bitpos, parallel); return;
    case circuit::Gate::Kind::Z: kernel_z(s.amps, bitpos, parallel); return;
    case circuit::Gate::Kind::MCX: kernel_mcx(s.amps, s.width, g, parallel); return;
  }
}

void apply_in_place(const circuit::Circuit& c, StateVector& s, ExecPolicy policy) {
  if (c.width != s.width)
    throw WidthMismatch("apply: circuit width " + std::to_string(c.width) +
                        " != state width " + std::to_string(s.width));
  for (const circuit::Gate& g : c.gates) apply_gate_in_place(s, g, policy);
}

StateVector apply(const circuit::Circuit& c, const StateVector& s, ExecPolicy policy) {
  StateVector out = s;
  apply_in_place(c, out, policy);
  return out;
}

FaultSpec FaultSpec::pauli(char axis, std::size_t boundary, int qubit, double p) {
  FaultSpec f;
  f.model = Model::Pauli;
  f.location = {circuit::ErrorLocation::Site::Wire, qubit, boundary};
  f.axis = axis;
  f.probability = p;
  return f;
}

FaultSpec FaultSpec::init_bias(int qubit, double b) {
  FaultSpec f;
  f.model = Model::InitBias;
  f.location = {circuit::ErrorLocation::Site::Init, qubit, 0};
  f.probability = b;
  return f;
}

FaultSpec FaultSpec::measure_bias(int qubit, int stuck, double b) {
  FaultSpec f;
  f.model = Model::MeasureBias;
  f.location = {circuit::ErrorLocation::Site::Measure, qubit, 0};
  f.probability = b;
  f.stuck = stuck;
  return f;
}

void FaultSpec::validate(const circuit::Circuit& c) const {
  using Site = circuit::ErrorLocation::Site;
  if (location.qubit < 0 || location.qubit >= c.width)
    throw LocationInvalid("fault qubit out of range");
  switch (model) {
    case Model::Pauli:
      if (location.site != Site::Wire) throw LocationInvalid("Pauli faults live on wires");
      if (location.boundary > c.size()) throw LocationInvalid("wire boundary out of range");
      if (axis != 'X' && axis != 'Y' && axis != 'Z') throw LocationInvalid("Pauli axis must be X/Y/Z");
      if (probability <= 0.0 || probability > 1.0)
        throw LocationInvalid("placement probability must be in (0,1]");
      break;
    case Model::InitBias:
      if (location.site != Site::Init) throw LocationInvalid("InitBias faults live on inits");
      if (probability < 0.0 || probability > 1.0) throw LocationInvalid("bias must be in [0,1]");
      break;
    case Model::MeasureBias:
      if (location.site != Site::Measure)
        throw LocationInvalid("MeasureBias faults live on measurements");
      if (stuck != 0 && stuck != 1) throw LocationInvalid("stuck value must be 0 or 1");
      if (probability < 0.0 || probability > 1.0) throw LocationInvalid("bias must be in [0,1]");
      break;
  }
}

namespace {

std::string format_prob(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::string FaultSpec::to_string() const {
  switch (model) {
    case Model::Pauli:
      return std::string("pauli,axis=") + axis + ",w=" + std::to_string(location.boundary) +
             ",q=" + std::to_string(location.qubit) + ",p=" + format_prob(probability);
    case Model::InitBias:
      return "init,q=" + std::to_string(location.qubit) + ",bias=" + format_prob(probability);
    case Model::MeasureBias:
      return "measure,q=" + std::to_string(location.qubit) + ",stuck=" + std::to_string(stuck) +
             ",bias=" + format_prob(probability);
  }
  return "?";
}

FaultSpec parse_fault(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  if (!std::getline(in, head, ',')) throw ParseError("empty fault spec");
  std::map<std::string, std::string> kv;
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("fault spec expects key=value: '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto need = [&kv, &text](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("fault spec '" + text + "' missing " + key + "=");
    return it->second;
  };
  auto get_num = [&text](const std::string& v) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      throw ParseError("fault spec '" + text + "': bad number '" + v + "'");
    }
  };
  if (head == "pauli") {
    std::string axis = need("axis");
    if (axis.size() != 1) throw ParseError("pauli axis must be one of X/Y/Z");
    double p = kv.count("p") ? get_num(kv["p"]) : 1.0;
    return FaultSpec::pauli(static_cast<char>(std::toupper(axis[0])),
                            static_cast<std::size_t>(get_num(need("w"))),
                            static_cast<int>(get_num(need("q"))), p);
  }
  if (head == "init") {
    double b = kv.count("bias") ? get_num(kv["bias"]) : 1.0;
    return FaultSpec::init_bias(static_cast<int>(get_num(need("q"))), b);
  }
  if (head == "measure") {
    double b = kv.count("bias") ? get_num(kv["bias"]) : 1.0;
    return FaultSpec::measure_bias(static_cast<int>(get_num(need("q"))),
                                   static_cast<int>(get_num(need("stuck"))), b);
  }
  throw ParseError("unknown fault model '" + head + "'");
}

namespace {

circuit::Gate pauli_gate(char axis, int qubit) {
  switch (axis) {
    case 'X': return circuit::Gate::x(qubit);
    case 'Y': return circuit::Gate::y(qubit);
    default: return circuit::Gate::z(qubit);
  }
}

// Split every branch on a probabilistic event: with weight p the gate fires.
void split_apply(Ensemble& ensemble, const circuit::Gate& g, double p, ExecPolicy policy) {
  if (p >= 1.0) {
    for (Branch& b : ensemble) apply_gate_in_place(b.state, g, policy);
    return;
  }
  if (p <= 0.0) return;
  std::size_t n = ensemble.size();
  for (std::size_t i = 0; i < n; ++i) {
    Branch faulted{ensemble[i].weight * p, ensemble[i].state};
    apply_gate_in_place(faulted.state, g, policy);
    ensemble[i].weight *= 1.0 - p;
    ensemble.push_back(std::move(faulted));
  }
}

}  // namespace

Ensemble apply_faulty(const circuit::Circuit& c, const StateVector& init,
                      const std::vector<FaultSpec>& faults, ExecPolicy policy) {
  using Site = circuit::ErrorLocation::Site;
  for (const FaultSpec& f : faults) {
    f.validate(c);
    if (f.model == FaultSpec::Model::MeasureBias)
      throw LocationInvalid("MeasureBias is handled by measure_distribution");
  }
  Ensemble ensemble;
  ensemble.push_back({1.0, init});
  for (const FaultSpec& f : faults) {
    if (f.model == FaultSpec::Model::InitBias)
      split_apply(ensemble, circuit::Gate::x(f.location.qubit), f.probability, policy);
  }
  for (std::size_t b = 0; b <= c.size(); ++b) {
    for (const FaultSpec& f : faults) {
      if (f.model == FaultSpec::Model::Pauli && f.location.site == Site::Wire &&
          f.location.boundary == b) {
        split_apply(ensemble, pauli_gate(f.axis, f.location.qubit), f.probability, policy);
      }
    }
    if (b < c.size()) {
      for (Branch& br : ensemble) apply_gate_in_place(br.state, c.gates[b], policy);
    }
  }
  return ensemble;
}

double OutcomeDistribution::at(const std::string& label) const {
  auto it = probs.find(label);
  return it == probs.end() ? 0.0 : it->second;
}

double OutcomeDistribution::sum() const {
  double s = 0.0;
  for (auto& [label, p] : probs) s += p;
  return s;
}

namespace {

std::string index_label(std::size_t index, int width) {
  std::string bits(width, '0');
  for (int q = 0; q < width; ++q) {
    if ((index >> (width - 1 - q)) & 1u) bits[q] = '1';
  }
  return bits;
}

void apply_measure_bias(OutcomeDistribution& dist, const FaultSpec& f) {
  if (f.probability <= 0.0) return;
  std::map<std::string, double> out;
  for (auto& [label, p] : dist.probs) {
    int q = f.location.qubit;
    if (label[q] == '.') {  // Bell-measured qubit: per-readout bias does not apply
      out[label] += p;
      continue;
    }
    std::string forced = label;
    forced[q] = static_cast<char>('0' + f.stuck);
    out[forced] += p * f.probability;
    if (f.probability < 1.0) out[label] += p * (1.0 - f.probability);
  }
  // drop numerical dust so distributions stay sparse and deterministic
  std::map<std::string, double> cleaned;
  for (auto& [label, p] : out) {
    if (p > 1e-15) cleaned[label] = p;
  }
  dist.probs = std::move(cleaned);
}

}  // namespace

OutcomeDistribution measure_distribution(const Ensemble& ensemble,
                                         const std::vector<FaultSpec>& measure_faults) {
  OutcomeDistribution dist;
  if (ensemble.empty()) return dist;
  dist.width = ensemble.front().state.width;
  for (const Branch& b : ensemble) {
    for (std::size_t i = 0; i < b.state.size(); ++i) {
      double p = b.weight * std::norm(b.state.amps[i]);
      if (p > 1e-15) dist.probs[index_label(i, dist.width)] += p;
    }
  }
  for (const FaultSpec& f : measure_faults) {
    if (f.model != FaultSpec::Model::MeasureBias)
      throw LocationInvalid("measure_distribution only takes MeasureBias faults");
    apply_measure_bias(dist, f);
  }
  return dist;
}

namespace {

const char* kBellNames[4] = {"PHI+", "PHI-", "PSI+", "PSI-"};

// Bell amplitudes on (pair bit a, pair bit b): index 2a+b.
const amplitude kBellVectors[4][4] = {
    {kInvSqrt2, 0, 0, kInvSqrt2},    // PHI+ = (|00> + |11>)/sqrt2
    {kInvSqrt2, 0, 0, -kInvSqrt2},   // PHI-
    {0, kInvSqrt2, kInvSqrt2, 0},    // PSI+
    {0, kInvSqrt2, -kInvSqrt2, 0},   // PSI-
};

}  // namespace

OutcomeDistribution bell_measure(const StateVector& s, int qa, int qb) {
  Ensemble one;
  one.push_back({1.0, s});
  return bell_measure(one, qa, qb, {});
}

OutcomeDistribution bell_measure(const Ensemble& ensemble, int qa, int qb,
                                 const std::vector<FaultSpec>& measure_faults) {
  OutcomeDistribution dist;
  if (ensemble.empty()) return dist;
  const int width = ensemble.front().state.width;
  if (qa == qb || qa < 0 || qb < 0 || qa >= width || qb >= width)
    throw Error("bell_measure: invalid qubit pair");
  dist.width = width;
  const std::size_t abit = std::size_t{1} << (width - 1 - qa);
  const std::size_t bbit = std::size_t{1} << (width - 1 - qb);
  for (const Branch& br : ensemble) {
    const StateVector& s = br.state;
    for (std::size_t base = 0; base < s.size(); ++base) {
      if (base & (abit | bbit)) continue;  // enumerate pair-cleared indices once
      amplitude pair_amp[4] = {s.amps[base], s.amps[base | bbit], s.amps[base | abit],
                               s.amps[base | abit | bbit]};
      std::string bits = index_label(base, width);
      bits[qa] = '.';
      bits[qb] = '.';
      for (int bell = 0; bell < 4; ++bell) {
        amplitude overlap = 0.0;
        for (int i = 0; i < 4; ++i) overlap += std::conj(kBellVectors[bell][i]) * pair_amp[i];
        double p = br.weight * std::norm(overlap);
        if (p > 1e-15) dist.probs[bits + "|" + kBellNames[bell]] += p;
      }
    }
  }
  for (const FaultSpec& f : measure_faults) {
    if (f.model != FaultSpec::Model::MeasureBias)
      throw LocationInvalid("measure_distribution only takes MeasureBias faults");
    apply_measure_bias(dist, f);
  }
  return dist;
}

namespace {

// Rank-1 peel of the 2 x n matrix whose rows split the state on one qubit.
// The dominant singular pair comes from the 2x2 Gram matrix; sigma2 is then
// taken from the explicit residual M - u (u^H M), which stays at the rounding
// floor (~1e-15) for true products instead of the sqrt(eps) floor an
// eigenvalue-difference estimate would hit. The ratio sigma2/sigma1 is
// compared against the tolerance.
struct PeelResult {
  bool rank1 = false;
  std::array<amplitude, 2> factor{};
  std::vector<amplitude> rest;
};

PeelResult peel_pair(const std::vector<amplitude>& a, std::size_t stride0, std::size_t stride1,
                     std::size_t count, double tol) {
  // Entry (r, i) of the 2 x count matrix is a[stride0 * r + stride1 * i].
  PeelResult r;
  double g00 = 0.0, g11 = 0.0;
  amplitude g01 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const amplitude v0 = a[stride1 * i], v1 = a[stride0 + stride1 * i];
    g00 += std::norm(v0);
    g11 += std::norm(v1);
    g01 += v0 * std::conj(v1);
  }
  const double tr = g00 + g11;
  if (tr <= 0.0) return r;
  const double det = g00 * g11 - std::norm(g01);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lam_max = (tr + disc) / 2.0;
  amplitude u0, u1;
  if (std::abs(g00 - lam_max) > std::abs(g11 - lam_max)) {
    u0 = g01;
    u1 = lam_max - g00;
  } else {
    u0 = lam_max - g11;
    u1 = std::conj(g01);
  }
  double un = std::sqrt(std::norm(u0) + std::norm(u1));
  if (un < 1e-300) {  // degenerate Gram: one row is (numerically) zero
    u0 = g00 >= g11 ? 1.0 : 0.0;
    u1 = g00 >= g11 ? 0.0 : 1.0;
    un = 1.0;
  }
  u0 /= un;
  u1 /= un;
  std::vector<amplitude> rest(count);
  double sigma1_sq = 0.0, sigma2_sq = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const amplitude v0 = a[stride1 * i], v1 = a[stride0 + stride1 * i];
    const amplitude p = std::conj(u0) * v0 + std::conj(u1) * v1;
    rest[i] = p;
    sigma1_sq += std::norm(p);
    sigma2_sq += std::norm(v0 - u0 * p) + std::norm(v1 - u1 * p);
  }
  const double sigma1 = std::sqrt(sigma1_sq);
  if (sigma1 <= 0.0 || std::sqrt(sigma2_sq) > tol * sigma1) return r;
  for (amplitude& v : rest) v /= sigma1;
  r.rank1 = true;
  r.factor = {u0, u1};
  r.rest = std::move(rest);
  return r;
}

PeelResult peel_msb(const std::vector<amplitude>& a, double tol) {
  return peel_pair(a, a.size() / 2, 1, a.size() / 2, tol);
}

// Rotate the factor so its dominant component is real positive; returns the
// phase that must be pushed onto an earlier factor.
amplitude canonicalize_factor(std::array<amplitude, 2>& f) {
  int lead = std::abs(f[0]) >= std::abs(f[1]) ? 0 : 1;
  double mag = std::abs(f[lead]);
  if (mag < 1e-300) return 1.0;
  amplitude phase = f[lead] / mag;
  f[0] /= phase;
  f[1] /= phase;
  return phase;
}

}  // namespace

ProductCheck is_product(const StateVector& s, double tol) {
  ProductCheck check;
  std::vector<amplitude> rest = s.amps;
  std::vector<std::array<amplitude, 2>> factors;
  for (int q = 0; q + 1 < s.width; ++q) {
    PeelResult peel = peel_msb(rest, tol);
    if (!peel.rank1) return check;
    factors.push_back(peel.factor);
    rest = std::move(peel.rest);
  }
  factors.push_back({rest[0], rest[1]});
  amplitude accumulated = 1.0;
  for (std::size_t i = 1; i < factors.size(); ++i) accumulated *= canonicalize_factor(factors[i]);
  factors[0][0] *= accumulated;
  factors[0][1] *= accumulated;
  check.product = true;
  check.factors = std::move(factors);
  return check;
}

boolfn::SignVector phase_vector(const StateVector& s, double tol) {
  const int k = s.width - 1;
  if (k < 1) throw Error("phase_vector needs at least one top qubit");
  // Peel the target (least significant) qubit: matrix entry (b, x) = amps[2x+b].
  PeelResult peel = peel_pair(s.amps, 1, 2, s.size() / 2, tol);
  if (!peel.rank1) throw TargetEntangled("target qubit does not factor out");
  const amplitude t0 = peel.factor[0], t1 = peel.factor[1];
  if (std::abs(std::abs(t0) - std::abs(t1)) > tol)
    throw NotBalanced("target factor is not |+> or |->");
  const amplitude rel = t1 / t0;
  if (std::abs(rel - 1.0) > tol * 10 && std::abs(rel + 1.0) > tol * 10)
    throw NotBalanced("target factor is not |+> or |->");

  boolfn::SignVector sv;
  sv.k = k;
  sv.signs.resize(std::size_t{1} << k);
  const double expected_mag = std::pow(2.0, -k / 2.0);
  const amplitude ref = peel.rest[0];
  if (std::abs(std::abs(ref) - expected_mag) > tol)
    throw NotBalanced("top-register amplitudes are not balanced");
  for (std::size_t x = 0; x < sv.signs.size(); ++x) {
    if (std::abs(std::abs(peel.rest[x]) - expected_mag) > tol)
      throw NotBalanced("top-register amplitudes are not balanced");
    amplitude ratio = peel.rest[x] / ref;
    if (std::abs(ratio - 1.0) <= tol * 10) {
      sv.signs[x] = 1;
    } else if (std::abs(ratio + 1.0) <= tol * 10) {
      sv.signs[x] = -1;
    } else {
      throw NotBalanced("top-register phases are not +/-1");
    }
  }
  return sv;
}

}  // namespace qorc::sim
