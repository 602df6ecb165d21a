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

#include "nlqc/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace nlqc::qmath {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenvalueFloor = -1e-9;
constexpr double kSigmaSupportTol = 1e-12;
constexpr double kRhoWeightTol = 1e-10;

double log2_safe(double x) { return std::log2(x); }

// Eigenvalues of a state, with the PSD-drift clamp: values in
// (kEigenvalueFloor, 0) become 0, anything lower is an error.
std::vector<double> clamped_spectrum(const ComplexMatrix& rho) {
  std::vector<double> vals = eigvals_hermitian(rho);
  for (double& v : vals) {
    if (v < 0.0) {
      if (v < kEigenvalueFloor) {
        throw std::invalid_argument("state has an eigenvalue below -1e-9");
      }
      v = 0.0;
    }
  }
  return vals;
}

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

}  // namespace

double PureState::norm() const {
  double s = 0.0;
  for (const Cplx& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

DensityMatrix make_density(ComplexMatrix mat, std::vector<int> dims,
                           std::vector<std::string> labels) {
  DensityMatrix rho{std::move(mat), std::move(dims), std::move(labels)};
  if (rho.labels.size() != rho.dims.size()) {
    throw std::invalid_argument("density matrix: labels/dims size mismatch");
  }
  if (product(rho.dims) != rho.mat.dim()) {
    throw std::invalid_argument("density matrix: subsystem dims do not match matrix dim");
  }
  std::set<std::string> unique(rho.labels.begin(), rho.labels.end());
  if (unique.size() != rho.labels.size()) {
    throw std::invalid_argument("density matrix: duplicate subsystem label");
  }
  return rho;
}

DensityMatrix projector(const PureState& psi, std::vector<int> dims,
                        std::vector<std::string> labels) {
  const int n = psi.dim();
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("pure state is not normalized");
  }
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = psi.amplitudes[static_cast<std::size_t>(i)] *
                std::conj(psi.amplitudes[static_cast<std::size_t>(j)]);
    }
  }
  return make_density(std::move(m), std::move(dims), std::move(labels));
}

void validate_density(const DensityMatrix& rho, bool check_psd) {
  if (!rho.mat.all_finite()) throw std::invalid_argument("density matrix: non-finite entry");
  if (hermiticity_defect(rho.mat) > kHermitianTol) {
    throw std::invalid_argument("density matrix: not Hermitian within 1e-10");
  }
  if (std::abs(rho.mat.trace() - Cplx{1.0, 0.0}) > kTraceTol) {
    throw std::invalid_argument("density matrix: trace differs from 1 by more than 1e-10");
  }
  if (product(rho.dims) != rho.dim()) {
    throw std::invalid_argument("density matrix: subsystem dims do not match matrix dim");
  }
  if (check_psd) {
    const std::vector<double> vals = eigvals_hermitian(rho.mat);
    if (vals.back() < kEigenvalueFloor) {
      throw std::invalid_argument("density matrix: eigenvalue below -1e-9");
    }
  }
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  const int n_sub = static_cast<int>(rho.labels.size());

  std::vector<bool> kept(static_cast<std::size_t>(n_sub), false);
  for (const std::string& label : keep) {
    bool found = false;
    for (int k = 0; k < n_sub; ++k) {
      if (rho.labels[static_cast<std::size_t>(k)] == label) {
        kept[static_cast<std::size_t>(k)] = true;
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("partial_trace: unknown subsystem label: " + label);
  }

  std::vector<int> keep_idx, trace_idx;
  for (int k = 0; k < n_sub; ++k) {
    (kept[static_cast<std::size_t>(k)] ? keep_idx : trace_idx).push_back(k);
  }

  // Row-major strides over the subsystem multi-index.
  std::vector<int> stride(static_cast<std::size_t>(n_sub), 1);
  for (int k = n_sub - 2; k >= 0; --k) {
    stride[static_cast<std::size_t>(k)] =
        stride[static_cast<std::size_t>(k + 1)] * rho.dims[static_cast<std::size_t>(k + 1)];
  }

  std::vector<int> out_dims;
  std::vector<std::string> out_labels;
  int out_dim = 1, traced_dim = 1;
  for (int k : keep_idx) {
    out_dims.push_back(rho.dims[static_cast<std::size_t>(k)]);
    out_labels.push_back(rho.labels[static_cast<std::size_t>(k)]);
    out_dim *= rho.dims[static_cast<std::size_t>(k)];
  }
  for (int k : trace_idx) traced_dim *= rho.dims[static_cast<std::size_t>(k)];

  // Flat offsets of each kept/traced multi-index into the original matrix.
  auto offsets = [&](const std::vector<int>& subsys) {
    std::vector<int> offs{0};
    for (int k : subsys) {
      std::vector<int> next;
      next.reserve(offs.size() * static_cast<std::size_t>(rho.dims[static_cast<std::size_t>(k)]));
      for (int base : offs) {
        for (int i = 0; i < rho.dims[static_cast<std::size_t>(k)]; ++i) {
          next.push_back(base + i * stride[static_cast<std::size_t>(k)]);
        }
      }
      offs = std::move(next);
    }
    return offs;
  };
  const std::vector<int> keep_offsets = offsets(keep_idx);
  const std::vector<int> trace_offsets = offsets(trace_idx);

  ComplexMatrix out(out_dim);
  for (int i = 0; i < out_dim; ++i) {
    for (int j = 0; j < out_dim; ++j) {
      Cplx sum = 0.0;
      for (int t = 0; t < traced_dim; ++t) {
        sum += rho.mat(keep_offsets[static_cast<std::size_t>(i)] +
                           trace_offsets[static_cast<std::size_t>(t)],
                       keep_offsets[static_cast<std::size_t>(j)] +
                           trace_offsets[static_cast<std::size_t>(t)]);
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix{std::move(out), std::move(out_dims), std::move(out_labels)};
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, int d1, int d2) {
  ComplexMatrix out(d2);
  for (int p = 0; p < d2; ++p) {
    for (int q = 0; q < d2; ++q) {
      Cplx sum = 0.0;
      for (int i = 0; i < d1; ++i) sum += m(i * d2 + p, i * d2 + q);
      out(p, q) = sum;
    }
  }
  return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, int d1, int d2) {
  ComplexMatrix out(d1);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      Cplx sum = 0.0;
      for (int p = 0; p < d2; ++p) sum += m(i * d2 + p, j * d2 + p);
      out(i, j) = sum;
    }
  }
  return out;
}

double entropy_of_matrix(const ComplexMatrix& rho) {
  double s = 0.0;
  for (double v : clamped_spectrum(rho)) {
    if (v > 0.0) s -= v * log2_safe(v);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_matrix(rho.mat); }

double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& part_a,
                          const std::vector<std::string>& part_b) {
  std::set<std::string> a(part_a.begin(), part_a.end());
  std::set<std::string> b(part_b.begin(), part_b.end());
  for (const std::string& label : a) {
    if (b.count(label) > 0) {
      throw std::invalid_argument("mutual_information: overlapping partitions");
    }
  }
  if (a.size() + b.size() != rho.labels.size()) {
    throw std::invalid_argument("mutual_information: partitions must cover the state");
  }
  for (const std::string& label : rho.labels) {
    if (a.count(label) == 0 && b.count(label) == 0) {
      throw std::invalid_argument("mutual_information: partitions must cover the state");
    }
  }
  const double s_a = von_neumann_entropy(partial_trace(rho, part_a));
  const double s_b = von_neumann_entropy(partial_trace(rho, part_b));
  const double s_ab = von_neumann_entropy(rho);
  return s_a + s_b - s_ab;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  const EigResult es = eig_hermitian(sigma.mat);
  const int n = rho.dim();

  double result = 0.0;
  for (double v : clamped_spectrum(rho.mat)) {
    if (v > 0.0) result += v * log2_safe(v);
  }

  for (int j = 0; j < n; ++j) {
    // rho weight on the j-th eigenvector of sigma.
    Cplx weight_c = 0.0;
    for (int r = 0; r < n; ++r) {
      Cplx row = 0.0;
      for (int c = 0; c < n; ++c) row += rho.mat(r, c) * es.vectors(c, j);
      weight_c += std::conj(es.vectors(r, j)) * row;
    }
    const double weight = weight_c.real();
    const double mu = es.values[static_cast<std::size_t>(j)];
    if (mu < kSigmaSupportTol) {
      if (weight > kRhoWeightTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    result -= weight * log2_safe(mu);
  }
  return std::max(0.0, result);
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  double s = 0.0;
  for (double v : eigvals_hermitian(m)) s += std::abs(v);
  return s;
}

double trace_norm_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("trace_norm_distance: dimension mismatch");
  }
  return trace_norm_hermitian(rho - sigma);
}

double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_norm_distance(rho.mat, sigma.mat);
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * log2_safe(x) - (1.0 - x) * log2_safe(1.0 - x);
}

double h_big(double y) {
  if (y < 0.0) throw std::invalid_argument("h_big: negative argument");
  if (y == 0.0) return 0.0;
  return (1.0 + y) * binary_entropy(y / (1.0 + y));
}

double eta(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("eta: argument outside [0,1]");
  return 2.0 * std::sqrt(x * (1.0 - x));
}

ComplexMatrix qubit_from_bloch(const std::array<double, 3>& r) {
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + r[2]);
  m(1, 1) = 0.5 * (1.0 - r[2]);
  m(0, 1) = 0.5 * Cplx{r[0], -r[1]};
  m(1, 0) = 0.5 * Cplx{r[0], r[1]};
  return m;
}

std::array<double, 3> bloch_of(const ComplexMatrix& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2);
  m(0, 1) = Cplx{0.0, -1.0};
  m(1, 0) = Cplx{0.0, 1.0};
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace nlqc::qmath
