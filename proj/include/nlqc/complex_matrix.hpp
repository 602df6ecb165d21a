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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlqc::qmath {

using Cplx = std::complex<double>;

/// Dense square complex matrix, row major.
///
/// The universal carrier for gates, states and intermediate operators.
/// Hilbert space dimensions in this project never exceed 16, so storage is a
/// flat vector and every algorithm is written for clarity at small sizes.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim)
      : dim_(dim), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {}

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }

  Cplx& operator()(int r, int c) { return entries_[index(r, c)]; }
  const Cplx& operator()(int r, int c) const { return entries_[index(r, c)]; }

  std::span<const Cplx> entries() const { return entries_; }
  std::span<Cplx> entries() { return entries_; }

  Cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Cplx s);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(c);
  }

  int dim_ = 0;
  std::vector<Cplx> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Cplx s, ComplexMatrix a);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Entrywise complex conjugate.
ComplexMatrix conjugate(const ComplexMatrix& a);

/// Kronecker product; entry ((i*db+k),(j*db+l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// u * m * u^dagger.
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise deviation from the Hermitian condition a = a^dagger.
double hermiticity_defect(const ComplexMatrix& a);

/// Largest entrywise deviation of u^dagger u from the identity.
double unitarity_defect(const ComplexMatrix& u);

}  // namespace nlqc::qmath
