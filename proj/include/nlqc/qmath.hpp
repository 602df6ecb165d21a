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

#include <array>
#include <string>
#include <vector>

#include "nlqc/complex_matrix.hpp"

namespace nlqc::qmath {

/// Normalized state vector.
struct PureState {
  std::vector<Cplx> amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const;
};

/// Density matrix over an ordered list of labelled subsystems.
///
/// Invariants (checked by validate()): Hermitian to 1e-10 entrywise, unit
/// trace to 1e-10, smallest eigenvalue >= -1e-9, and the product of `dims`
/// equals the matrix dimension.
struct DensityMatrix {
  ComplexMatrix mat;
  std::vector<int> dims;
  std::vector<std::string> labels;

  int dim() const { return mat.dim(); }
};

DensityMatrix make_density(ComplexMatrix mat, std::vector<int> dims,
                           std::vector<std::string> labels);

/// Projector |psi><psi| carrying the given subsystem structure.
DensityMatrix projector(const PureState& psi, std::vector<int> dims,
                        std::vector<std::string> labels);

/// Throws std::invalid_argument when an invariant fails. `check_psd` runs the
/// eigenvalue check, which costs a diagonalization.
void validate_density(const DensityMatrix& rho, bool check_psd = true);

/// Reduced state on the subsystems named in `keep`, in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Partial traces for an unlabelled bipartite matrix (d1 x d2 split).
ComplexMatrix partial_trace_first(const ComplexMatrix& m, int d1, int d2);
ComplexMatrix partial_trace_second(const ComplexMatrix& m, int d1, int d2);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues are sorted descending; column j of `vectors` is the
/// eigenvector for `values[j]`, so a = V diag(values) V^dagger.
struct EigResult {
  std::vector<double> values;
  ComplexMatrix vectors;
};

EigResult eig_hermitian(const ComplexMatrix& a);

/// Eigenvalues only, descending.
std::vector<double> eigvals_hermitian(const ComplexMatrix& a);

/// von Neumann entropy in bits. Eigenvalues in (-1e-9, 0) are clamped to 0
/// before the log; anything more negative is an error.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_of_matrix(const ComplexMatrix& rho);

/// I(A:B) = S(A) + S(B) - S(AB) in bits. `part_a` and `part_b` must be
/// disjoint and together cover every subsystem of rho.
double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& part_a,
                          const std::vector<std::string>& part_b);

/// Relative entropy D(rho||sigma) in bits. Returns +infinity when the support
/// of rho is not contained in the support of sigma (sigma eigenvalues below
/// 1e-12 carrying rho weight above 1e-10).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// One-norm distance tr|rho - sigma|, in [0, 2].
double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_norm_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Trace norm of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& m);

/// Binary entropy h(x) = -x log2 x - (1-x) log2(1-x) on [0, 1].
double binary_entropy(double x);

/// H(y) = (1+y) h(y/(1+y)), the entropy-type factor in continuity bounds.
double h_big(double y);

/// eta(x) = 2 sqrt(x (1-x)) on [0, 1].
double eta(double x);

/// Single-qubit density matrix (I + r . sigma)/2 for |r| <= 1.
ComplexMatrix qubit_from_bloch(const std::array<double, 3>& r);

/// Bloch vector (tr(X rho), tr(Y rho), tr(Z rho)) of a qubit state.
std::array<double, 3> bloch_of(const ComplexMatrix& rho);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace nlqc::qmath
