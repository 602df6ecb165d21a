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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nlqc/qmath.hpp"

namespace nlqc::qmath {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const int n = a.dim();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p != q) s += std::norm(a(p, q));
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigResult eig_hermitian(const ComplexMatrix& a_in) {
  const int n = a_in.dim();
  if (n <= 0) throw std::invalid_argument("eig_hermitian: empty matrix");
  if (hermiticity_defect(a_in) > 1e-8) {
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  }

  // Symmetrize so rotations act on an exactly Hermitian matrix.
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (a_in(i, j) + std::conj(a_in(j, i)));
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  constexpr int kMaxSweeps = 64;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < 1e-14 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Cplx apq = a(p, q);
        const double beta = std::abs(apq);
        if (beta < 1e-300) continue;
        const Cplx phase = apq / beta;  // e^{i phi}

        // Rotation angle zeroing a(p,q): tan(2 theta) = 2|a_pq| / (a_pp - a_qq).
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double tau = (alpha - gamma) / (2.0 * beta);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J differs from identity only at (p,p)=(q,q)=c, (p,q)=-s e^{i phi},
        // (q,p)=s e^{-i phi}. Apply a <- J^dagger a J, v <- v J.
        const Cplx s_phase = s * phase;
        const Cplx s_phase_conj = s * std::conj(phase);
        for (int k = 0; k < n; ++k) {
          const Cplx akp = a(k, p);
          const Cplx akq = a(k, q);
          a(k, p) = c * akp + s_phase_conj * akq;
          a(k, q) = -s_phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Cplx apk = a(p, k);
          const Cplx aqk = a(q, k);
          a(p, k) = c * apk + s_phase * aqk;
          a(q, k) = -s_phase_conj * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Cplx vkp = v(k, p);
          const Cplx vkq = v(k, q);
          v(k, p) = c * vkp + s_phase_conj * vkq;
          v(k, q) = -s_phase * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i).real();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return values[static_cast<std::size_t>(x)] > values[static_cast<std::size_t>(y)];
  });

  EigResult result;
  result.values.resize(n);
  result.vectors = ComplexMatrix(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    result.values[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(src)];
    for (int i = 0; i < n; ++i) result.vectors(i, j) = v(i, src);
  }
  return result;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& a) {
  return eig_hermitian(a).values;
}

}  // namespace nlqc::qmath
