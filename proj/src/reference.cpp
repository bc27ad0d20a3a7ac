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

#include "qorc/reference.hpp"

#include <array>
#include <cmath>

namespace qorc::reference {

namespace {

using Mat2 = std::array<amplitude, 4>;  // row-major 2x2

const Mat2 kId{1, 0, 0, 1};
const Mat2 kX{0, 1, 1, 0};
const Mat2 kY{0, amplitude{0, 1}, amplitude{0, -1}, 0};  // i|0><1| - i|1><0|
const Mat2 kZ{1, 0, 0, -1};
const Mat2 kH{std::sqrt(0.5), std::sqrt(0.5), std::sqrt(0.5), -std::sqrt(0.5)};
const Mat2 kProj0{1, 0, 0, 0};
const Mat2 kProj1{0, 0, 0, 1};

std::vector<amplitude> kron_chain(const std::vector<Mat2>& blocks) {
  std::vector<amplitude> m{1.0};
  std::size_t dim = 1;
  for (const Mat2& b : blocks) {
    std::vector<amplitude> next(dim * 2 * dim * 2);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        amplitude v = m[r * dim + c];
        for (int br = 0; br < 2; ++br) {
          for (int bc = 0; bc < 2; ++bc) {
            next[(r * 2 + br) * dim * 2 + (c * 2 + bc)] = v * b[br * 2 + bc];
          }
        }
      }
    }
    m = std::move(next);
    dim *= 2;
  }
  return m;
}

}  // namespace

std::vector<amplitude> gate_unitary(const circuit::Gate& g, int width) {
  if (width > kMaxReferenceWidth) throw Error("reference simulator width cap exceeded");
  const std::size_t dim = std::size_t{1} << width;
  auto single = [&](const Mat2& u) {
    std::vector<Mat2> blocks(width, kId);
    blocks[g.target] = u;  // qubit 0 is the leftmost Kronecker factor (MSB)
    return kron_chain(blocks);
  };
  switch (g.kind) {
    case circuit::Gate::Kind::H: return single(kH);
    case circuit::Gate::Kind::X: return single(kX);
    case circuit::Gate::Kind::Y: return single(kY);
    case circuit::Gate::Kind::Z: return single(kZ);
    case circuit::Gate::Kind::MCX: break;
  }
  // U = (I - P) + P_with_X: P projects onto the activating control subspace.
  std::vector<Mat2> proj_blocks(width, kId);
  std::vector<Mat2> flip_blocks(width, kId);
  for (const circuit::Control& c : g.controls) {
    proj_blocks[c.qubit] = c.positive ? kProj1 : kProj0;
    flip_blocks[c.qubit] = c.positive ? kProj1 : kProj0;
  }
  flip_blocks[g.target] = kX;
  std::vector<amplitude> proj = kron_chain(proj_blocks);
  std::vector<amplitude> flip = kron_chain(flip_blocks);
  std::vector<amplitude> u(dim * dim);
  for (std::size_t i = 0; i < dim * dim; ++i) u[i] = -proj[i] + flip[i];
  for (std::size_t d = 0; d < dim; ++d) u[d * dim + d] += 1.0;
  return u;
}

sim::StateVector apply(const circuit::Circuit& c, const sim::StateVector& s) {
  if (c.width != s.width) throw WidthMismatch("reference apply: width mismatch");
  sim::StateVector cur = s;
  const std::size_t dim = cur.size();
  for (const circuit::Gate& g : c.gates) {
    std::vector<amplitude> u = gate_unitary(g, c.width);
    sim::StateVector next(c.width);
    for (std::size_t r = 0; r < dim; ++r) {
      amplitude acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += u[r * dim + k] * cur.amps[k];
      next.amps[r] = acc;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace qorc::reference
