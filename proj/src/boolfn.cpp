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

#include "qorc/boolfn.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>

namespace qorc::boolfn {

namespace {

void check_k(int k) {
  if (k < 1 || k > 16) throw Error("variable count out of range: k=" + std::to_string(k));
}

}  // namespace

uint32_t var_mask_of_index(uint32_t index, int k) {
  uint32_t mask = 0;
  for (int i = 0; i < k; ++i) {
    if (index & (1u << (k - 1 - i))) mask |= 1u << i;
  }
  return mask;
}

BooleanFunction::BooleanFunction(int k_) : k(k_) {
  check_k(k_);
  table.assign(1u << k_, 0);
}

BooleanFunction BooleanFunction::from_minterms(int k, const std::vector<uint32_t>& minterms) {
  BooleanFunction f(k);
  for (uint32_t m : minterms) {
    if (m >= f.size()) throw Error("minterm index out of range");
    f.table[m] = 1;
  }
  return f;
}

uint64_t BooleanFunction::word() const {
  if (k > 6) throw Error("word() only supported for k <= 6");
  uint64_t bits = 0;
  for (uint32_t i = 0; i < size(); ++i) {
    if (table[i]) bits |= uint64_t{1} << i;
  }
  return bits;
}

BooleanFunction BooleanFunction::from_word(int k, uint64_t bits) {
  if (k > 6) throw Error("from_word only supported for k <= 6");
  BooleanFunction f(k);
  for (uint32_t i = 0; i < f.size(); ++i) f.table[i] = (bits >> i) & 1u;
  return f;
}

BooleanFunction operator^(const BooleanFunction& a, const BooleanFunction& b) {
  if (a.k != b.k) throw Error("XOR of functions with different k");
  BooleanFunction r(a.k);
  for (uint32_t i = 0; i < r.size(); ++i) r.table[i] = a.table[i] ^ b.table[i];
  return r;
}

bool PprmExpansion::evaluate(uint32_t assignment) const {
  uint32_t vars = var_mask_of_index(assignment, k);
  bool v = constant;
  for (uint32_t t : terms) {
    if ((vars & t) == t) v = !v;
  }
  return v;
}

int PprmExpansion::degree() const {
  int d = 0;
  for (uint32_t t : terms) d = std::max(d, __builtin_popcount(t));
  return d;
}

PprmExpansion pprm_expand(const BooleanFunction& f) {
  // Binary Moebius (Reed-Muller) transform, in place over the minterm index space.
  std::vector<uint8_t> c = f.table;
  uint32_t n = f.size();
  for (uint32_t step = 1; step < n; step <<= 1) {
    for (uint32_t i = 0; i < n; ++i) {
      if (i & step) c[i] ^= c[i ^ step];
    }
  }
  PprmExpansion p;
  p.k = f.k;
  p.constant = c[0];
  for (uint32_t idx = 1; idx < n; ++idx) {
    if (c[idx]) p.terms.push_back(var_mask_of_index(idx, f.k));
  }
  std::sort(p.terms.begin(), p.terms.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return p;
}

BooleanFunction pprm_to_function(const PprmExpansion& p) {
  BooleanFunction f(p.k);
  for (uint32_t i = 0; i < f.size(); ++i) f.table[i] = p.evaluate(i);
  return f;
}

bool Cube::evaluate(uint32_t assignment) const {
  uint32_t vars = var_mask_of_index(assignment, k);
  return (vars & pos) == pos && (vars & neg) == 0;
}

uint64_t Cube::key() const {
  uint64_t v = 0;
  for (int i = 0; i < k; ++i) {  // x1 first = most significant trit
    uint32_t bit = 1u << i;
    uint64_t sym = (pos & bit) ? 1 : (neg & bit) ? 2 : 0;
    v = v * 3 + sym;
  }
  return v;
}

bool Esop::evaluate(uint32_t assignment) const {
  bool v = false;
  for (const Cube& c : cubes) v ^= c.evaluate(assignment);
  return v;
}

BooleanFunction Esop::to_function() const {
  BooleanFunction f(k);
  for (uint32_t i = 0; i < f.size(); ++i) f.table[i] = evaluate(i);
  return f;
}

bool AffineCoeffs::evaluate(uint32_t assignment, int k) const {
  return c0 ^ parity(mask & var_mask_of_index(assignment, k));
}

BooleanFunction AffineCoeffs::to_function(int k) const {
  BooleanFunction f(k);
  for (uint32_t i = 0; i < f.size(); ++i) f.table[i] = evaluate(i, k);
  return f;
}

std::optional<AffineCoeffs> is_affine(const BooleanFunction& f) {
  PprmExpansion p = pprm_expand(f);
  AffineCoeffs a;
  a.c0 = p.constant;
  for (uint32_t t : p.terms) {
    if (__builtin_popcount(t) > 1) return std::nullopt;
    a.mask |= t;
  }
  return a;
}

std::vector<AffineCoeffs> enumerate_affine(int k) {
  check_k(k);
  std::vector<AffineCoeffs> out;
  out.reserve(2u << k);
  for (uint32_t c0 = 0; c0 < 2; ++c0) {
    for (uint32_t m = 0; m < (1u << k); ++m) out.push_back({c0 != 0, m});
  }
  std::sort(out.begin(), out.end(),
            [k](const AffineCoeffs& a, const AffineCoeffs& b) { return a.key(k) < b.key(k); });
  return out;
}

namespace {

// BFS over the 2^(2^k) truth-table space; edges XOR one of the 3^k - 1 cubes.
struct EsopTables {
  std::vector<Cube> cubes;           // ascending lexicographic key
  std::vector<uint32_t> cube_words;  // truth table of each cube
  std::vector<uint8_t> dist;         // BFS distance from the zero function
};

Cube cube_from_key(uint64_t key, int k) {
  Cube c{k, 0, 0};
  for (int i = k - 1; i >= 0; --i) {  // least significant trit is x_k
    uint64_t sym = key % 3;
    key /= 3;
    if (sym == 1) c.pos |= 1u << i;
    if (sym == 2) c.neg |= 1u << i;
  }
  return c;
}

uint32_t cube_word(const Cube& c, int k) {
  uint32_t w = 0;
  for (uint32_t i = 0; i < (1u << k); ++i) {
    if (c.evaluate(i)) w |= 1u << i;
  }
  return w;
}

const EsopTables& esop_tables(int k) {
  static std::array<EsopTables, 5> cache;
  static std::array<std::once_flag, 5> flags;
  std::call_once(flags[k], [k]() {
    EsopTables& t = cache[k];
    uint64_t ncubes = 1;
    for (int i = 0; i < k; ++i) ncubes *= 3;
    for (uint64_t key = 1; key < ncubes; ++key) {  // key 0 is the constant-1 cube
      Cube c = cube_from_key(key, k);
      t.cubes.push_back(c);
      t.cube_words.push_back(cube_word(c, k));
    }
    size_t nstates = size_t{1} << (1u << k);
    t.dist.assign(nstates, 0xff);
    t.dist[0] = 0;
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
      uint32_t s = queue.front();
      queue.pop_front();
      uint8_t d = t.dist[s];
      for (uint32_t w : t.cube_words) {
        uint32_t next = s ^ w;
        if (t.dist[next] == 0xff) {
          t.dist[next] = d + 1;
          queue.push_back(next);
        }
      }
    }
  });
  return cache[k];
}

}  // namespace

EsopMin esop_min_cubes(const BooleanFunction& f) {
  if (f.k >= 5) throw KTooLarge("exact ESOP minimization supports k <= 4, got k=" + std::to_string(f.k));
  const EsopTables& t = esop_tables(f.k);
  uint32_t word = static_cast<uint32_t>(f.word());
  EsopMin result;
  result.cost = t.dist[word];
  result.witness.k = f.k;
  // Greedy reconstruction: always take the lexicographically smallest cube that
  // still lies on a shortest path; deterministic witness.
  uint32_t s = word;
  while (s != 0) {
    uint8_t d = t.dist[s];
    for (size_t i = 0; i < t.cubes.size(); ++i) {
      uint32_t next = s ^ t.cube_words[i];
      if (t.dist[next] == d - 1) {
        result.witness.cubes.push_back(t.cubes[i]);
        s = next;
        break;
      }
    }
  }
  std::sort(result.witness.cubes.begin(), result.witness.cubes.end(),
            [](const Cube& a, const Cube& b) { return a.key() < b.key(); });
  return result;
}

BistResidue bist_residue(const BooleanFunction& f) {
  BistResidue r;
  if (f.k <= 4) {
    // Ties on cost break on the witness cube keys, then the affine key
    // (candidates arrive in ascending affine key order).
    auto witness_keys = [](const Esop& e) {
      std::vector<uint64_t> keys;
      keys.reserve(e.cubes.size());
      for (const Cube& c : e.cubes) keys.push_back(c.key());
      return keys;
    };
    bool have = false;
    int best_cost = 0;
    std::vector<uint64_t> best_keys;
    for (const AffineCoeffs& a : enumerate_affine(f.k)) {
      BooleanFunction bist = f ^ a.to_function(f.k);
      EsopMin m = esop_min_cubes(bist);
      std::vector<uint64_t> keys = witness_keys(m.witness);
      if (!have || m.cost < best_cost || (m.cost == best_cost && keys < best_keys)) {
        have = true;
        best_cost = m.cost;
        best_keys = std::move(keys);
        r.affine = a;
        r.bist = bist;
        r.esop = m.witness;
      }
    }
    r.exact = true;
    return r;
  }
  // Degree truncation: no scalable exact minimizer; residue straight from the PPRM.
  PprmExpansion p = pprm_expand(f);
  r.affine.c0 = p.constant;
  r.affine.mask = 0;
  r.esop.k = f.k;
  for (uint32_t t : p.terms) {
    if (__builtin_popcount(t) <= 1) {
      r.affine.mask |= t;
    } else {
      r.esop.cubes.push_back(Cube{f.k, t, 0});
    }
  }
  r.bist = f ^ r.affine.to_function(f.k);
  r.exact = false;
  return r;
}

SignVector sign_vector(const BooleanFunction& f) {
  SignVector s;
  s.k = f.k;
  s.signs.resize(f.size());
  for (uint32_t i = 0; i < f.size(); ++i) s.signs[i] = f.table[i] ? -1 : 1;
  return s;
}

BooleanFunction sign_decode(const SignVector& s) {
  BooleanFunction f(s.k);
  for (uint32_t i = 0; i < f.size(); ++i) f.table[i] = s.signs[i] < 0 ? 1 : 0;
  return f;
}

namespace {

int hex_digit(char c, int line_no) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw ParseError("line " + std::to_string(line_no) + ": bad hex digit '" + std::string(1, c) + "'");
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

BooleanFunction parse_function(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int k = -1;
  std::optional<BooleanFunction> f;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    std::string key = strip(s.substr(0, eq));
    std::string value = strip(s.substr(eq + 1));
    if (key == "k") {
      try {
        k = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad k value");
      }
      if (k < 1 || k > 16)
        throw ParseError("line " + std::to_string(line_no) + ": k out of range 1..16");
    } else if (key == "tt") {
      if (k < 0) throw ParseError("line " + std::to_string(line_no) + ": tt= before k=");
      BooleanFunction fn(k);
      uint32_t nbits = fn.size();
      size_t max_digits = (nbits + 3) / 4;
      if (value.empty() || value.size() > max_digits)
        throw ParseError("line " + std::to_string(line_no) + ": tt hex needs 1.." +
                         std::to_string(max_digits) + " digits");
      for (size_t i = 0; i < value.size(); ++i) {
        int d = hex_digit(value[value.size() - 1 - i], line_no);
        for (int b = 0; b < 4; ++b) {
          uint32_t bit = static_cast<uint32_t>(i * 4 + b);
          if ((d >> b) & 1) {
            if (bit >= nbits)
              throw ParseError("line " + std::to_string(line_no) + ": tt bit beyond 2^k");
            fn.table[bit] = 1;
          }
        }
      }
      f = fn;
    } else if (key == "minterms") {
      if (k < 0) throw ParseError("line " + std::to_string(line_no) + ": minterms= before k=");
      BooleanFunction fn(k);
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = strip(item);
        if (item.empty()) continue;
        uint32_t m = 0;
        try {
          m = static_cast<uint32_t>(std::stoul(item));
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(line_no) + ": bad minterm '" + item + "'");
        }
        if (m >= fn.size())
          throw ParseError("line " + std::to_string(line_no) + ": minterm " + item + " >= 2^k");
        fn.table[m] = 1;
      }
      f = fn;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (k < 0) throw ParseError("missing k= line");
  if (!f) throw ParseError("missing tt= or minterms= line");
  return *f;
}

std::string print_function(const BooleanFunction& f) {
  uint32_t nbits = f.size();
  size_t digits = (nbits + 3) / 4;
  std::string hex(digits, '0');
  for (uint32_t i = 0; i < nbits; ++i) {
    if (!f.table[i]) continue;
    size_t d = i / 4;
    int v = hex[digits - 1 - d] <= '9' ? hex[digits - 1 - d] - '0'
                                       : hex[digits - 1 - d] - 'a' + 10;
    v |= 1 << (i % 4);
    hex[digits - 1 - d] = v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
  }
  return "k=" + std::to_string(f.k) + "\ntt=" + hex + "\n";
}

}  // namespace qorc::boolfn
