// Copyright 2026 the nlqc-bounds authors
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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlqc/qmath.hpp"
#include "nlqc/rng.hpp"

namespace nlqc::gates {

/// A named two-qubit unitary. In every 4x4 matrix the first tensor factor is
/// wire A and the second is wire B; catalog CNOT therefore has A as control.
struct Gate {
  std::string name;
  qmath::ComplexMatrix matrix;
};

struct UnknownGateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MatrixFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnitaryError : std::runtime_error {
  NonUnitaryError(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_) {}
  double residual;
};

/// Canonical names of the thirteen gates rendered by the `table` command.
const std::vector<std::string>& table_gate_names();

/// All catalog names (the table gates plus SWAP and Identity).
const std::vector<std::string>& catalog_names();

/// Case-insensitive lookup; spaces, hyphens and underscores are ignored.
/// Aliases: RXX = XX, ECR = EchoedCrossResonance, B = Berkeley = BerkeleyB,
/// SqrtSWAP for the square root of SWAP, DB for Dagwood Bumstead.
/// Throws UnknownGateError listing the valid names.
Gate catalog_lookup(std::string_view name);

/// |Psi+><Psi+| on subsystems (Q, A).
qmath::DensityMatrix bell_state();

/// (|00><00| + |11><11|)/2 on subsystems (Q, A).
qmath::DensityMatrix classically_correlated();

/// Haar-distributed dim x dim unitary: complex Gaussian matrix, Gram-Schmidt
/// orthonormalization with the positive-diagonal gauge of the triangular
/// factor (equivalently, columns rephased by the diagonal phases), which
/// removes the sampling bias of ungauged QR.
qmath::ComplexMatrix haar_unitary(int dim, Rng& rng);

/// Haar-random two-qubit gate.
Gate haar_random(Rng& rng);

/// Loads a gate from the JSON matrix file format {dim, re, im} (row-major
/// nested arrays). Throws MatrixFileError on parse problems and
/// NonUnitaryError (with the residual) when ||U^dagger U - I||_max > 1e-8.
Gate gate_from_file(const std::filesystem::path& path);

/// Loads a density matrix from the same {dim, re, im} format and validates
/// the state invariants. The subsystem split must be a power of 2; labels are
/// (Q, A) for dim 4.
qmath::DensityMatrix density_from_file(const std::filesystem::path& path);

/// Serializes a matrix to the {dim, re, im} format.
std::string matrix_to_json(const qmath::ComplexMatrix& m);

}  // namespace nlqc::gates
