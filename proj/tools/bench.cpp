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

// Compares the serial and OpenMP statevector kernel paths on a random layered
// circuit and cross-checks their results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "qorc/circuit.hpp"
#include "qorc/sim.hpp"

using namespace qorc;

namespace {

circuit::Circuit random_layers(int width, int layers, std::mt19937_64& rng) {
  circuit::Circuit c(width);
  std::uniform_int_distribution<int> pick_kind(0, 3);
  std::uniform_int_distribution<int> pick_qubit(0, width - 1);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < width; ++q) {
      switch (pick_kind(rng)) {
        case 0: c.gates.push_back(circuit::Gate::h(q)); break;
        case 1: c.gates.push_back(circuit::Gate::z(q)); break;
        case 2: {
          int ctl = pick_qubit(rng);
          if (ctl == q) ctl = (ctl + 1) % width;
          c.gates.push_back(circuit::Gate::cn(ctl, q));
          break;
        }
        default: {
          int c1 = (q + 1) % width, c2 = (q + 2) % width;
          if (width > 2)
            c.gates.push_back(circuit::Gate::mcx({{c1, true}, {c2, false}}, q));
          else
            c.gates.push_back(circuit::Gate::x(q));
          break;
        }
      }
    }
  }
  return c;
}

double run_once(const circuit::Circuit& c, sim::StateVector& s, sim::ExecPolicy policy) {
  auto t0 = std::chrono::steady_clock::now();
  sim::apply_in_place(c, s, policy);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int width = argc > 1 ? std::atoi(argv[1]) : 20;
  int layers = argc > 2 ? std::atoi(argv[2]) : 8;
  std::mt19937_64 rng(12345);
  circuit::Circuit c = random_layers(width, layers, rng);

  sim::StateVector serial = sim::prepare(width, std::string(static_cast<size_t>(width), '0'));
  sim::StateVector parallel = serial;
  double t_serial = run_once(c, serial, sim::ExecPolicy::Serial);
  double t_parallel = run_once(c, parallel, sim::ExecPolicy::Parallel);

  double max_diff = 0.0;
  for (std::size_t i = 0; i < serial.size(); ++i)
    max_diff = std::max(max_diff, std::abs(serial.amps[i] - parallel.amps[i]));

  const double gate_amps = static_cast<double>(c.size()) * std::pow(2.0, width);
  std::printf("width %d, %zu gates, %.3g amplitude updates\n", width, c.size(), gate_amps);
  std::printf("serial:   %8.3f ms  (%.1f Mamp/s)\n", t_serial * 1e3, gate_amps / t_serial / 1e6);
  std::printf("parallel: %8.3f ms  (%.1f Mamp/s)\n", t_parallel * 1e3, gate_amps / t_parallel / 1e6);
  std::printf("speedup:  %.2fx, max |diff| = %.3g\n", t_serial / t_parallel, max_diff);
  return max_diff < 1e-9 ? 0 : 1;
}
