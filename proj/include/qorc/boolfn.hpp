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
#include <optional>
#include <string>
#include <vector>

#include "qorc/common.hpp"

namespace qorc::boolfn {

// Two bit encodings are used side by side:
//  * minterm index: x1 is the MOST significant bit (truth-table row order,
//    same order as the top register of a statevector);
//  * variable mask: x_i is bit i-1 (x1 = LSB), used for product terms, cube
//    literals and affine coefficients.
// var_mask_of_index converts between them (it is its own inverse up to k).
uint32_t var_mask_of_index(uint32_t index, int k);

inline bool parity(uint32_t v) { return __builtin_popcount(v) & 1u; }

/// Truth table of a k-variable switching function.
struct BooleanFunction {
  int k = 0;
  std::vector<uint8_t> table;  // length 2^k, one bit per minterm index

  BooleanFunction() = default;
  explicit BooleanFunction(int k_);

  static BooleanFunction zero(int k) { return BooleanFunction(k); }
  static BooleanFunction from_minterms(int k, const std::vector<uint32_t>& minterms);

  uint32_t size() const { return 1u << k; }
  uint8_t evaluate(uint32_t assignment) const { return table.at(assignment); }
  void set(uint32_t assignment, bool value) { table.at(assignment) = value ? 1 : 0; }

  /// Truth table packed into one word (minterm 0 at bit 0); k <= 6 only.
  uint64_t word() const;
  static BooleanFunction from_word(int k, uint64_t bits);

  bool operator==(const BooleanFunction&) const = default;
};

BooleanFunction operator^(const BooleanFunction& a, const BooleanFunction& b);

/// Positive-polarity Reed-Muller expansion: constant XOR positive product terms.
struct PprmExpansion {
  int k = 0;
  bool constant = false;           // c0, kept apart from the product terms
  std::vector<uint32_t> terms;     // nonzero variable masks, sorted by (literal count, mask)

  bool evaluate(uint32_t assignment) const;
  int degree() const;
};

/// Mixed-polarity product term. pos/neg are disjoint variable masks; both empty
/// only for the constant-1 cube.
struct Cube {
  int k = 0;
  uint32_t pos = 0;
  uint32_t neg = 0;

  bool evaluate(uint32_t assignment) const;
  int literal_count() const { return __builtin_popcount(pos | neg); }
  /// Lexicographic key over per-variable symbols (x1 most significant;
  /// absent < positive < negative).
  uint64_t key() const;
  bool operator==(const Cube&) const = default;
};

/// XOR of mixed-polarity cubes.
struct Esop {
  int k = 0;
  std::vector<Cube> cubes;

  bool evaluate(uint32_t assignment) const;
  BooleanFunction to_function() const;
};

/// A_f(x) = c0 XOR (+)_i c_i x_i with c as a variable mask.
struct AffineCoeffs {
  bool c0 = false;
  uint32_t mask = 0;

  bool evaluate(uint32_t assignment, int k) const;
  BooleanFunction to_function(int k) const;
  uint32_t key(int k) const { return (static_cast<uint32_t>(c0) << k) | mask; }
  bool operator==(const AffineCoeffs&) const = default;
};

/// Per-minterm signs +1/-1, bijective with a BooleanFunction via en(+1)=0, en(-1)=1.
struct SignVector {
  int k = 0;
  std::vector<int8_t> signs;  // length 2^k, entries +1 or -1

  bool operator==(const SignVector&) const = default;
};

PprmExpansion pprm_expand(const BooleanFunction& f);
BooleanFunction pprm_to_function(const PprmExpansion& p);

/// Some(coeffs) iff the PPRM has no term with 2+ literals.
std::optional<AffineCoeffs> is_affine(const BooleanFunction& f);

/// All 2^(k+1) affine functions, ascending by coefficient key.
std::vector<AffineCoeffs> enumerate_affine(int k);

struct EsopMin {
  int cost = 0;
  Esop witness;
};

/// True minimum cube count (BFS over the full truth-table space). Throws
/// KTooLarge for k >= 5. The constant-1 cube is not an edge, so cost(1) = 2.
EsopMin esop_min_cubes(const BooleanFunction& f);

struct BistResidue {
  AffineCoeffs affine;    // selected A with f = bist XOR A
  BooleanFunction bist;
  Esop esop;              // realization of bist
  bool exact = false;     // false for the k >= 5 degree-truncation fallback
};

/// Split f into an affine part and the cheapest disentangling residue.
/// k <= 4: exact over all 2^(k+1) affine candidates; ties broken by smallest
/// witness then smallest affine key. k >= 5: degree-<=1 truncation of the PPRM,
/// residue realized as positive cubes (flagged non-exact).
BistResidue bist_residue(const BooleanFunction& f);

SignVector sign_vector(const BooleanFunction& f);
BooleanFunction sign_decode(const SignVector& s);

// Truth-table text format: "k=<n>" line, then either "tt=<hex>" (minterm 0 in
// the least significant bit) or "minterms=<comma list>". '#' starts a comment.
BooleanFunction parse_function(const std::string& text);
std::string print_function(const BooleanFunction& f);

}  // namespace qorc::boolfn
