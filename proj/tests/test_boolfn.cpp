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

#include <algorithm>
#include <random>
#include <set>

#include "qorc/boolfn.hpp"

using namespace qorc;
using namespace qorc::boolfn;

namespace {

// The worked 4-variable example: ones at 0010, 0100, 0101, 1000, 1001, 1111.
BooleanFunction example_function() {
  return BooleanFunction::from_minterms(4, {2, 4, 5, 8, 9, 15});
}

uint32_t mask_of(std::initializer_list<int> vars) {
  uint32_t m = 0;
  for (int v : vars) m |= 1u << (v - 1);
  return m;
}

BooleanFunction random_function(int k, std::mt19937_64& rng) {
  BooleanFunction f(k);
  for (auto& bit : f.table) bit = rng() & 1u;
  return f;
}

// Independent minimality oracle: enumerate all XOR combinations of up to
// `max_size` cubes and take the smallest that reproduces f.
int min_cubes_by_subsets(const BooleanFunction& f, int max_size) {
  std::vector<uint32_t> words;
  uint64_t ncubes = 1;
  for (int i = 0; i < f.k; ++i) ncubes *= 3;
  for (uint64_t key = 1; key < ncubes; ++key) {
    Cube c{f.k, 0, 0};
    uint64_t rest = key;
    for (int i = f.k - 1; i >= 0; --i) {
      uint64_t sym = rest % 3;
      rest /= 3;
      if (sym == 1) c.pos |= 1u << i;
      if (sym == 2) c.neg |= 1u << i;
    }
    uint32_t w = 0;
    for (uint32_t a = 0; a < f.size(); ++a) {
      if (c.evaluate(a)) w |= 1u << a;
    }
    words.push_back(w);
  }
  uint32_t target = static_cast<uint32_t>(f.word());
  if (target == 0) return 0;
  auto search = [&](auto&& self, std::size_t start, int remaining, uint32_t acc) -> bool {
    if (remaining == 0) return acc == target;
    for (std::size_t i = start; i < words.size(); ++i) {
      if (self(self, i + 1, remaining - 1, acc ^ words[i])) return true;
    }
    return false;
  };
  for (int size = 1; size <= max_size; ++size) {
    if (search(search, 0, size, 0)) return size;
  }
  return -1;
}

}  // namespace

TEST_CASE("pprm of the zero function is empty") {
  PprmExpansion p = pprm_expand(BooleanFunction::zero(3));
  CHECK(!p.constant);
  CHECK(p.terms.empty());
}

TEST_CASE("pprm of AND(x1,x2) is a single top product term") {
  // minterm order 00,01,10,11 -> table 0001
  BooleanFunction f = BooleanFunction::from_minterms(2, {3});
  PprmExpansion p = pprm_expand(f);
  CHECK(!p.constant);
  REQUIRE(p.terms.size() == 1);
  CHECK(p.terms[0] == mask_of({1, 2}));
}

TEST_CASE("pprm of the worked example matches the seven product terms") {
  PprmExpansion p = pprm_expand(example_function());
  CHECK(!p.constant);  // the truth table column is the ground truth
  std::set<uint32_t> expected = {
      mask_of({1}),       mask_of({2}),       mask_of({3}),       mask_of({3, 4}),
      mask_of({1, 3, 4}), mask_of({1, 2, 3}), mask_of({2, 3, 4}),
  };
  CHECK(std::set<uint32_t>(p.terms.begin(), p.terms.end()) == expected);
  // deterministic order: ascending literal count, then ascending mask
  for (std::size_t i = 1; i < p.terms.size(); ++i) {
    int pa = __builtin_popcount(p.terms[i - 1]), pb = __builtin_popcount(p.terms[i]);
    CHECK((pa < pb || (pa == pb && p.terms[i - 1] < p.terms[i])));
  }
}

TEST_CASE("evaluate matches the truth table rows") {
  BooleanFunction f = example_function();
  CHECK(f.evaluate(0b1111) == 1);
  CHECK(f.evaluate(0b0000) == 0);
  CHECK(f.evaluate(0b0101) == 1);
  CHECK(f.evaluate(0b0110) == 0);
}

TEST_CASE("pprm roundtrips on every function, exhaustive k<=3 and sampled k=4") {
  for (int k = 1; k <= 3; ++k) {
    for (uint64_t bits = 0; bits < (uint64_t{1} << (1u << k)); ++bits) {
      BooleanFunction f = BooleanFunction::from_word(k, bits);
      CHECK(pprm_to_function(pprm_expand(f)) == f);
    }
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    BooleanFunction f = random_function(4, rng);
    CHECK(pprm_to_function(pprm_expand(f)) == f);
  }
}

TEST_CASE("pprm is unique: perturbing any coefficient changes the function") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    BooleanFunction f = random_function(3, rng);
    PprmExpansion p = pprm_expand(f);
    {
      PprmExpansion q = p;
      q.constant = !q.constant;
      CHECK(!(pprm_to_function(q) == f));
    }
    for (uint32_t m = 1; m < f.size(); ++m) {  // toggle term m in or out
      PprmExpansion q = p;
      auto it = std::find(q.terms.begin(), q.terms.end(), m);
      if (it == q.terms.end()) {
        q.terms.push_back(m);
      } else {
        q.terms.erase(it);
      }
      CHECK(!(pprm_to_function(q) == f));
    }
  }
}

TEST_CASE("is_affine on linear, constant and nonlinear inputs") {
  BooleanFunction parity(3);
  for (uint32_t i = 0; i < 8; ++i) parity.table[i] = __builtin_popcount(i) & 1;
  auto a = is_affine(parity);
  REQUIRE(a.has_value());
  CHECK(!a->c0);
  CHECK(a->mask == 0b111u);

  BooleanFunction one(2);
  for (auto& b : one.table) b = 1;
  auto c = is_affine(one);
  REQUIRE(c.has_value());
  CHECK(c->c0);
  CHECK(c->mask == 0);

  CHECK(!is_affine(example_function()).has_value());
}

TEST_CASE("exactly 16 of the 256 three-variable functions are affine") {
  int affine = 0;
  for (uint64_t bits = 0; bits < 256; ++bits) {
    BooleanFunction f = BooleanFunction::from_word(3, bits);
    auto a = is_affine(f);
    if (a) {
      ++affine;
      CHECK(a->to_function(3) == f);
      for (uint32_t t : pprm_expand(f).terms) CHECK(__builtin_popcount(t) == 1);
    }
  }
  CHECK(affine == 16);
}

TEST_CASE("enumerate_affine yields 2^(k+1) distinct affine functions") {
  auto one_var = enumerate_affine(1);
  REQUIRE(one_var.size() == 4);  // 0, x1, 1, ~x1
  CHECK(one_var[0].to_function(1).word() == 0b00);
  CHECK(one_var[1].to_function(1).word() == 0b10);
  CHECK(one_var[2].to_function(1).word() == 0b11);
  CHECK(one_var[3].to_function(1).word() == 0b01);

  CHECK(enumerate_affine(3).size() == 16);

  auto four = enumerate_affine(4);
  REQUIRE(four.size() == 32);
  std::set<uint64_t> tables;
  for (const AffineCoeffs& a : four) {
    BooleanFunction f = a.to_function(4);
    tables.insert(f.word());
    CHECK(is_affine(f).has_value());
  }
  CHECK(tables.size() == 32);
}

TEST_CASE("esop_min_cubes base cases") {
  CHECK(esop_min_cubes(BooleanFunction::zero(3)).cost == 0);
  CHECK(esop_min_cubes(BooleanFunction::zero(3)).witness.cubes.empty());

  BooleanFunction x1_xor_x2(2);
  for (uint32_t i = 0; i < 4; ++i) x1_xor_x2.table[i] = ((i >> 1) ^ i) & 1;
  CHECK(esop_min_cubes(x1_xor_x2).cost == 2);

  BooleanFunction and3 = BooleanFunction::from_minterms(3, {7});
  EsopMin m = esop_min_cubes(and3);
  CHECK(m.cost == 1);
  CHECK(m.witness.to_function() == and3);

  CHECK_THROWS_AS(esop_min_cubes(BooleanFunction::zero(5)), KTooLarge);
}

TEST_CASE("esop witnesses realize their function, exhaustive k=3") {
  for (uint64_t bits = 0; bits < 256; ++bits) {
    BooleanFunction f = BooleanFunction::from_word(3, bits);
    EsopMin m = esop_min_cubes(f);
    CHECK(m.witness.to_function() == f);
    CHECK(static_cast<int>(m.witness.cubes.size()) == m.cost);
  }
}

TEST_CASE("esop minimum agrees with subset enumeration") {
  for (uint64_t bits = 0; bits < 16; ++bits) {  // all 16 two-variable functions
    BooleanFunction f = BooleanFunction::from_word(2, bits);
    CHECK(esop_min_cubes(f).cost == min_cubes_by_subsets(f, 4));
  }
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    BooleanFunction f = random_function(3, rng);
    int bfs = esop_min_cubes(f).cost;
    if (bfs <= 4) CHECK(bfs == min_cubes_by_subsets(f, 4));
  }
}

TEST_CASE("constant one costs two cubes (the constant cube is not a product term)") {
  BooleanFunction one(2);
  for (auto& b : one.table) b = 1;
  CHECK(esop_min_cubes(one).cost == 2);
}

TEST_CASE("esop cost drops by at most k under any affine XOR, exhaustive k=3") {
  auto affine = enumerate_affine(3);
  for (uint64_t bits = 0; bits < 256; ++bits) {
    BooleanFunction f = BooleanFunction::from_word(3, bits);
    int base = esop_min_cubes(f).cost;
    for (const AffineCoeffs& a : affine) {
      CHECK(esop_min_cubes(f ^ a.to_function(3)).cost >= base - 3);
    }
  }
}

TEST_CASE("bist_residue of an affine function is empty") {
  BooleanFunction parity(3);
  for (uint32_t i = 0; i < 8; ++i) parity.table[i] = __builtin_popcount(i) & 1;
  BistResidue r = bist_residue(parity);
  CHECK(r.exact);
  CHECK(r.esop.cubes.empty());
  CHECK(r.bist == BooleanFunction::zero(3));
  CHECK(r.affine.to_function(3) == parity);
}

TEST_CASE("bist_residue of the worked example flips exactly 1110 and 0011") {
  BistResidue r = bist_residue(example_function());
  CHECK(r.exact);
  CHECK(r.affine.c0 == false);
  CHECK(r.affine.mask == mask_of({1, 2, 3}));
  CHECK(r.bist == BooleanFunction::from_minterms(4, {0b0011, 0b1110}));
  CHECK(r.esop.cubes.size() == 2);
  CHECK(r.esop.to_function() == r.bist);
}

TEST_CASE("bist_residue consistency and minimality on random functions") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 40; ++i) {
    BooleanFunction f = random_function(3, rng);
    BistResidue r = bist_residue(f);
    CHECK((f ^ r.bist) == r.affine.to_function(3));
    CHECK(r.esop.to_function() == r.bist);
    int chosen = esop_min_cubes(r.bist).cost;
    CHECK(chosen >= esop_min_cubes(f).cost - 3);
    for (const AffineCoeffs& a : enumerate_affine(3)) {
      CHECK(chosen <= esop_min_cubes(f ^ a.to_function(3)).cost);
    }
  }
}

TEST_CASE("bist_residue falls back to degree truncation for k >= 5") {
  std::mt19937_64 rng(41);
  BooleanFunction f = random_function(5, rng);
  BistResidue r = bist_residue(f);
  CHECK(!r.exact);
  CHECK((f ^ r.bist) == r.affine.to_function(5));
  CHECK(r.esop.to_function() == r.bist);
  for (const Cube& c : r.esop.cubes) {
    CHECK(c.neg == 0);  // residue cubes come straight from the PPRM
    CHECK(c.literal_count() >= 2);
  }
}

TEST_CASE("sign vectors encode en(+1)=0, en(-1)=1") {
  SignVector zero = sign_vector(BooleanFunction::zero(2));
  CHECK(std::all_of(zero.signs.begin(), zero.signs.end(), [](int8_t s) { return s == 1; }));

  SignVector s = sign_vector(example_function());
  std::set<uint32_t> negatives;
  for (uint32_t i = 0; i < s.signs.size(); ++i) {
    if (s.signs[i] < 0) negatives.insert(i);
  }
  CHECK(negatives == std::set<uint32_t>{2, 4, 5, 8, 9, 15});

  for (uint64_t bits = 0; bits < 256; ++bits) {
    BooleanFunction f = BooleanFunction::from_word(3, bits);
    CHECK(sign_decode(sign_vector(f)) == f);
  }
}

TEST_CASE("truth-table text format round-trips") {
  CHECK(parse_function("k=4\ntt=8334\n") == example_function());
  CHECK(print_function(example_function()) == "k=4\ntt=8334\n");
  CHECK(parse_function("k=4\nminterms=2,4,5,8,9,15\n") == example_function());
  CHECK(parse_function("# comment\nk=2\nminterms=\n") == BooleanFunction::zero(2));
  for (uint64_t bits = 0; bits < 16; ++bits) {
    BooleanFunction f = BooleanFunction::from_word(2, bits);
    CHECK(parse_function(print_function(f)) == f);
  }
  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    BooleanFunction f = random_function(6, rng);
    CHECK(parse_function(print_function(f)) == f);
  }
}

TEST_CASE("malformed truth-table files raise parse errors") {
  CHECK_THROWS_AS(parse_function(""), ParseError);
  CHECK_THROWS_AS(parse_function("tt=00\n"), ParseError);
  CHECK_THROWS_AS(parse_function("k=2\ntt=zz\n"), ParseError);
  CHECK_THROWS_AS(parse_function("k=2\ntt=123\n"), ParseError);
  CHECK_THROWS_AS(parse_function("k=2\nminterms=7\n"), ParseError);
  CHECK_THROWS_AS(parse_function("k=0\ntt=0\n"), ParseError);
  CHECK_THROWS_AS(parse_function("k=2\nbogus=1\n"), ParseError);
}
