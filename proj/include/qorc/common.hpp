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

#include <complex>
#include <stdexcept>
#include <string>

namespace qorc {

using amplitude = std::complex<double>;

/// Amplitude/probability comparison tolerance used throughout unless overridden.
inline constexpr double kDefaultTolerance = 1e-9;

/// Dense statevector memory bound.
inline constexpr int kMaxWidth = 24;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

/// Exact ESOP minimization is only supported for k <= 4.
struct KTooLarge : Error {
  using Error::Error;
};

struct WidthMismatch : Error {
  using Error::Error;
};

struct LocationInvalid : Error {
  using Error::Error;
};

/// phase_vector: top-register amplitudes are not balanced +/- of equal magnitude.
struct NotBalanced : Error {
  using Error::Error;
};

/// phase_vector: the target qubit does not factor out as |+> or |->.
struct TargetEntangled : Error {
  using Error::Error;
};

/// gen-tests input circuit is not a k-CN oracle (e.g. target qubit used as control).
struct NonOracleCircuit : Error {
  using Error::Error;
};

}  // namespace qorc
