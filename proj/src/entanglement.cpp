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

#include "nlqc/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nlqc/optim.hpp"

namespace nlqc::entanglement {

namespace {

using qmath::ComplexMatrix;
using qmath::Cplx;
using qmath::DensityMatrix;
using qmath::EigResult;

constexpr double kLn2 = 0.69314718055994530941723212145818;

void require_two_qubits(const ComplexMatrix& rho, const char* who) {
  if (rho.dim() != 4) {
    throw std::invalid_argument(std::string(who) + ": expected a 4x4 two-qubit state");
  }
}

ComplexMatrix recompose(const EigResult& es, const std::vector<double>& vals) {
  const int n = es.vectors.dim();
  ComplexMatrix out(n);
  for (int k = 0; k < n; ++k) {
    const double v = vals[static_cast<std::size_t>(k)];
    if (v == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Cplx vik = es.vectors(i, k);
      for (int j = 0; j < n; ++j) {
        out(i, j) += v * vik * std::conj(es.vectors(j, k));
      }
    }
  }
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  const int n = m.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  }
  return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  EigResult es = eig_hermitian(m);
  std::vector<double> roots(es.values.size());
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    roots[k] = std::sqrt(std::max(0.0, es.values[k]));
  }
  return recompose(es, roots);
}

// sigma_y (x) sigma_y is real: antidiagonal (-1, 1, 1, -1).
ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  ComplexMatrix yy(4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy * conjugate(rho) * yy;
}

// Projection of a real vector onto the probability simplex.
std::vector<double> project_to_simplex(const std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(0.0, v[i] - theta);
  return out;
}

// Frobenius projection onto {PSD, unit trace}: simplex projection of the
// spectrum.
ComplexMatrix project_density(const ComplexMatrix& x) {
  EigResult es = eig_hermitian(hermitian_part(x));
  return recompose(es, project_to_simplex(es.values));
}

// Frobenius projection onto the PPT cone {sigma : sigma^Gamma >= 0}; the
// partial transpose is a Frobenius isometry, so this is exact.
ComplexMatrix project_ppt_cone(const ComplexMatrix& x) {
  ComplexMatrix g = partial_transpose(hermitian_part(x), 2, 2);
  EigResult es = eig_hermitian(g);
  std::vector<double> clamped = es.values;
  for (double& v : clamped) v = std::max(0.0, v);
  return partial_transpose(recompose(es, clamped), 2, 2);
}

// Dykstra's alternating projections onto {PSD, trace 1} and {PPT}; returns a
// state satisfying both within 1e-10.
ComplexMatrix project_feasible(const ComplexMatrix& x0) {
  ComplexMatrix x = hermitian_part(x0);
  ComplexMatrix p(4), q(4);
  ComplexMatrix y = x;
  for (int iter = 0; iter < 300; ++iter) {
    y = project_density(x + p);
    p = (x + p) - y;
    const ComplexMatrix xn = project_ppt_cone(y + q);
    q = (y + q) - xn;
    x = xn;
    const double pt_defect = std::min(0.0, eigvals_hermitian(partial_transpose(y, 2, 2)).back());
    if (pt_defect > -1e-10 && max_abs_diff(y, x) < 1e-11) break;
  }
  return y;  // exact density matrix, PPT within 1e-10
}

// Sign function of a Hermitian matrix together with its trace norm.
struct SignInfo {
  ComplexMatrix sign;
  double trace_norm;
};

SignInfo sign_and_norm(const ComplexMatrix& h) {
  EigResult es = eig_hermitian(h);
  std::vector<double> signs(es.values.size());
  double norm = 0.0;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    norm += std::abs(es.values[k]);
    signs[k] = es.values[k] > 1e-14 ? 1.0 : (es.values[k] < -1e-14 ? -1.0 : 0.0);
  }
  return SignInfo{recompose(es, signs), norm};
}

std::array<Cplx, 2> random_pure_qubit(Rng& rng) {
  std::array<Cplx, 2> a;
  double norm = 0.0;
  for (auto& amp : a) {
    amp = Cplx{rng.next_gaussian(), rng.next_gaussian()};
    norm += std::norm(amp);
  }
  norm = std::sqrt(norm);
  for (auto& amp : a) amp /= norm;
  return a;
}

std::array<Cplx, 4> product_vector(const std::array<Cplx, 2>& a, const std::array<Cplx, 2>& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

ComplexMatrix projector_of(const std::array<Cplx, 4>& u) {
  ComplexMatrix p(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) p(i, j) = u[static_cast<std::size_t>(i)] * std::conj(u[static_cast<std::size_t>(j)]);
  }
  return p;
}

double quadratic_form(const ComplexMatrix& g, const std::array<Cplx, 4>& u) {
  Cplx acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    Cplx row = 0.0;
    for (int j = 0; j < 4; ++j) row += g(i, j) * u[static_cast<std::size_t>(j)];
    acc += std::conj(u[static_cast<std::size_t>(i)]) * row;
  }
  return acc.real();
}

// Minimal eigenpair of a 2x2 Hermitian matrix, in closed form.
std::pair<double, std::array<Cplx, 2>> min_eigpair_2x2(const Cplx& m00, const Cplx& m01,
                                                       const Cplx& m11) {
  const double p = m00.real(), r = m11.real();
  const double half_diff = 0.5 * (p - r);
  const double disc = std::sqrt(half_diff * half_diff + std::norm(m01));
  const double lambda = 0.5 * (p + r) - disc;
  std::array<Cplx, 2> v;
  if (std::abs(m01) < 1e-300) {
    v = p <= r ? std::array<Cplx, 2>{1.0, 0.0} : std::array<Cplx, 2>{0.0, 1.0};
  } else {
    v = {m01, Cplx{lambda - p, 0.0}};
    double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v[0] /= norm;
    v[1] /= norm;
  }
  return {lambda, v};
}

// min over product states |a>|b> of <ab|G|ab>, by random seeding plus
// alternating closed-form eigenvector refinement in each factor.
struct ProductMin {
  double value;
  std::array<Cplx, 2> a, b;
};

ProductMin minimize_over_products(const ComplexMatrix& g, Rng& rng, int seeds) {
  ProductMin best{std::numeric_limits<double>::infinity(),
                  {Cplx{1.0, 0.0}, Cplx{0.0, 0.0}},
                  {Cplx{1.0, 0.0}, Cplx{0.0, 0.0}}};
  std::vector<ProductMin> top;
  for (int s = 0; s < seeds; ++s) {
    const auto a = random_pure_qubit(rng);
    const auto b = random_pure_qubit(rng);
    const double val = quadratic_form(g, product_vector(a, b));
    if (val < best.value) {
      best = ProductMin{val, a, b};
      top.push_back(best);
      if (top.size() > 4) top.erase(top.begin());
    }
  }

  ProductMin refined = best;
  for (ProductMin cand : top) {
    for (int round = 0; round < 40; ++round) {
      // Optimal |a> for fixed |b>: least eigenvector of K_b.
      Cplx k00 = 0.0, k01 = 0.0, k11 = 0.0;
      for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
          const Cplx w = std::conj(cand.b[static_cast<std::size_t>(k)]) * cand.b[static_cast<std::size_t>(kp)];
          k00 += w * g(k, kp);
          k01 += w * g(k, 2 + kp);
          k11 += w * g(2 + k, 2 + kp);
        }
      }
      cand.a = min_eigpair_2x2(k00, k01, k11).second;

      // Optimal |b> for fixed |a>.
      Cplx l00 = 0.0, l01 = 0.0, l11 = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int ip = 0; ip < 2; ++ip) {
          const Cplx w = std::conj(cand.a[static_cast<std::size_t>(i)]) * cand.a[static_cast<std::size_t>(ip)];
          l00 += w * g(2 * i, 2 * ip);
          l01 += w * g(2 * i, 2 * ip + 1);
          l11 += w * g(2 * i + 1, 2 * ip + 1);
        }
      }
      cand.b = min_eigpair_2x2(l00, l01, l11).second;

      const double val = quadratic_form(g, product_vector(cand.a, cand.b));
      if (val > cand.value - 1e-13) {
        cand.value = std::min(cand.value, val);
        break;
      }
      cand.value = val;
    }
    if (cand.value < refined.value) refined = cand;
  }
  return refined;
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& m, int d1, int d2) {
  if (m.dim() != d1 * d2) throw std::invalid_argument("partial_transpose: dims do not match");
  ComplexMatrix out(m.dim());
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      for (int k = 0; k < d2; ++k) {
        for (int l = 0; l < d2; ++l) {
          out(i * d2 + k, j * d2 + l) = m(i * d2 + l, j * d2 + k);
        }
      }
    }
  }
  return out;
}

PptResult is_ppt_matrix(const ComplexMatrix& rho, int d1, int d2) {
  const std::vector<double> vals = eigvals_hermitian(partial_transpose(rho, d1, d2));
  const double min_eig = vals.back();
  return PptResult{min_eig >= -1e-9, min_eig};
}

PptResult is_ppt(const DensityMatrix& rho, int cut) {
  if (cut <= 0 || cut >= static_cast<int>(rho.dims.size())) {
    throw std::invalid_argument("is_ppt: cut must split the subsystems into two blocks");
  }
  int d1 = 1, d2 = 1;
  for (std::size_t k = 0; k < rho.dims.size(); ++k) {
    (static_cast<int>(k) < cut ? d1 : d2) *= rho.dims[k];
  }
  return is_ppt_matrix(rho.mat, d1, d2);
}

double concurrence_matrix(const ComplexMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix root = matrix_sqrt_psd(hermitian_part(rho));
  const ComplexMatrix m = hermitian_part(root * spin_flip(rho) * root);
  std::vector<double> vals = eigvals_hermitian(m);
  std::array<double, 4> mu{};
  for (int k = 0; k < 4; ++k) mu[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, vals[static_cast<std::size_t>(k)]));
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double concurrence(const DensityMatrix& rho) { return concurrence_matrix(rho.mat); }

double eof_two_qubit_matrix(const ComplexMatrix& rho) {
  const double c = std::min(1.0, concurrence_matrix(rho));
  return qmath::binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double eof_two_qubit(const DensityMatrix& rho) { return eof_two_qubit_matrix(rho.mat); }

namespace {

// p * S(reduced state) for an unnormalized two-qubit vector with p = <psi|psi>.
// The reduced spectrum comes from the closed-form 2x2 eigenvalues, keeping
// this oracle independent of both the Jacobi solver and the concurrence path.
double weighted_member_entropy(const std::array<Cplx, 4>& psi) {
  const double p = std::norm(psi[0]) + std::norm(psi[1]) + std::norm(psi[2]) + std::norm(psi[3]);
  if (p < 1e-14) return 0.0;
  const double r00 = std::norm(psi[0]) + std::norm(psi[1]);
  const double r11 = std::norm(psi[2]) + std::norm(psi[3]);
  const Cplx r01 = psi[0] * std::conj(psi[2]) + psi[1] * std::conj(psi[3]);
  const double disc = std::sqrt(std::max(0.0, (r00 - r11) * (r00 - r11) + 4.0 * std::norm(r01)));
  double entropy = 0.0;
  for (const double lam : {0.5 * (p + disc), 0.5 * (p - disc)}) {
    const double q = lam / p;
    if (q > 1e-15) entropy -= q * std::log2(q);
  }
  return p * entropy;
}

}  // namespace

double eof_ensemble_oracle(const DensityMatrix& rho, int restarts, Rng& rng) {
  require_two_qubits(rho.mat, "eof_ensemble_oracle");
  const EigResult es = eig_hermitian(hermitian_part(rho.mat));

  int rank = 0;
  for (double v : es.values) {
    if (v > 1e-12) ++rank;
  }
  rank = std::max(1, rank);

  // Scaled eigenvectors sqrt(lambda_k) |v_k>; ensemble members are row
  // combinations of these under an m x rank isometry.
  std::vector<std::array<Cplx, 4>> basis(static_cast<std::size_t>(rank));
  for (int k = 0; k < rank; ++k) {
    const double w = std::sqrt(std::max(0.0, es.values[static_cast<std::size_t>(k)]));
    for (int i = 0; i < 4; ++i) basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = w * es.vectors(i, k);
  }

  auto members_of = [&](const std::vector<std::vector<Cplx>>& w, int m) {
    std::vector<std::array<Cplx, 4>> members(static_cast<std::size_t>(m), std::array<Cplx, 4>{});
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < rank; ++k) {
        const Cplx c = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        for (int d = 0; d < 4; ++d) {
          members[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] += c * basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
        }
      }
    }
    return members;
  };

  double best = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < std::max(1, restarts); ++restart) {
    const int m = rank + restart % (8 - rank + 1);

    // Random m x rank isometry: leading columns of a Haar m x m unitary,
    // drawn directly from Gaussian columns with Gram-Schmidt.
    std::vector<std::vector<Cplx>> w(static_cast<std::size_t>(m),
                                     std::vector<Cplx>(static_cast<std::size_t>(rank)));
    {
      // Orthonormal columns over C^m.
      std::vector<std::vector<Cplx>> cols(static_cast<std::size_t>(rank),
                                          std::vector<Cplx>(static_cast<std::size_t>(m)));
      for (auto& col : cols) {
        for (auto& entry : col) entry = Cplx{rng.next_gaussian(), rng.next_gaussian()};
      }
      for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t k = 0; k < j; ++k) {
          Cplx proj = 0.0;
          for (int i = 0; i < m; ++i) proj += std::conj(cols[k][static_cast<std::size_t>(i)]) * cols[j][static_cast<std::size_t>(i)];
          for (int i = 0; i < m; ++i) cols[j][static_cast<std::size_t>(i)] -= proj * cols[k][static_cast<std::size_t>(i)];
        }
        double norm = 0.0;
        for (int i = 0; i < m; ++i) norm += std::norm(cols[j][static_cast<std::size_t>(i)]);
        norm = std::sqrt(norm);
        for (int i = 0; i < m; ++i) cols[j][static_cast<std::size_t>(i)] /= norm;
      }
      for (int i = 0; i < m; ++i) {
        for (int k = 0; k < rank; ++k) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      }
    }

    std::vector<std::array<Cplx, 4>> members = members_of(w, m);
    std::vector<double> entropies(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) entropies[static_cast<std::size_t>(i)] = weighted_member_entropy(members[static_cast<std::size_t>(i)]);

    // Pairwise member rotations: a 2-parameter unitary mix of members (i, j)
    // leaves the ensemble average state invariant but changes the average
    // entanglement. Sweep all pairs a few times.
    for (int sweep = 0; sweep < 3; ++sweep) {
      for (int i = 0; i < m - 1; ++i) {
        for (int j = i + 1; j < m; ++j) {
          const std::array<Cplx, 4> psi_i = members[static_cast<std::size_t>(i)];
          const std::array<Cplx, 4> psi_j = members[static_cast<std::size_t>(j)];
          auto mixed = [&](double theta, double alpha) {
            const double c = std::cos(theta), s = std::sin(theta);
            const Cplx ph = std::exp(Cplx{0.0, alpha});
            std::array<Cplx, 4> a, b;
            for (int d = 0; d < 4; ++d) {
              a[static_cast<std::size_t>(d)] = c * psi_i[static_cast<std::size_t>(d)] + s * ph * psi_j[static_cast<std::size_t>(d)];
              b[static_cast<std::size_t>(d)] = -s * std::conj(ph) * psi_i[static_cast<std::size_t>(d)] + c * psi_j[static_cast<std::size_t>(d)];
            }
            return std::make_pair(a, b);
          };
          optim::NelderMeadOptions nm_opts;
          nm_opts.max_iters = 80;
          nm_opts.step = 0.4;
          nm_opts.f_tol = 1e-11;
          nm_opts.x_tol = 1e-6;
          const optim::NelderMeadResult r = optim::nelder_mead(
              [&](const std::vector<double>& t) {
                const auto [a, b] = mixed(t[0], t[1]);
                return weighted_member_entropy(a) + weighted_member_entropy(b);
              },
              {0.0, 0.0}, nm_opts);
          const double current = entropies[static_cast<std::size_t>(i)] + entropies[static_cast<std::size_t>(j)];
          if (r.value < current - 1e-13) {
            const auto [a, b] = mixed(r.x[0], r.x[1]);
            members[static_cast<std::size_t>(i)] = a;
            members[static_cast<std::size_t>(j)] = b;
            entropies[static_cast<std::size_t>(i)] = weighted_member_entropy(a);
            entropies[static_cast<std::size_t>(j)] = weighted_member_entropy(b);
          }
        }
      }
    }

    best = std::min(best, std::accumulate(entropies.begin(), entropies.end(), 0.0));
  }
  return best;
}

SeparabilityResult distance_to_separable_matrix(const ComplexMatrix& rho,
                                                const DistanceOptions& opts) {
  require_two_qubits(rho, "distance_to_separable");

  auto as_density = [](ComplexMatrix m) {
    return DensityMatrix{std::move(m), {2, 2}, {"Q", "A"}};
  };

  // Exact-zero shortcut: a PPT two-qubit state is separable.
  const PptResult ppt = is_ppt_matrix(rho, 2, 2);
  if (ppt.ppt) {
    SeparabilityResult r;
    r.distance = 0.0;
    r.witness = as_density(rho);
    r.converged = true;
    return r;
  }

  ComplexMatrix sigma = project_feasible(opts.warm_start != nullptr ? *opts.warm_start : rho);
  double best_f = sign_and_norm(rho - sigma).trace_norm;
  ComplexMatrix best_sigma = sigma;

  int total_iters = 0;
  bool capped = false;
  const int per_phase_cap = std::max(200, opts.max_iters / std::max(1, opts.anneal_phases));

  for (int phase = 0; phase < opts.anneal_phases && !capped; ++phase) {
    const double step0 = opts.initial_step / std::pow(4.0, phase);
    sigma = best_sigma;
    double window_best = best_f;
    int since_improvement = 0;

    for (int k = 1; k <= per_phase_cap; ++k) {
      if (++total_iters > opts.max_iters) {
        capped = since_improvement < opts.stall_window;
        break;
      }
      const SignInfo info = sign_and_norm(rho - sigma);
      // Subgradient descent step on ||rho - sigma||_1 with projection back
      // onto the PPT density matrices; step length step0 / sqrt(k).
      ComplexMatrix direction = info.sign;
      direction *= Cplx{step0 / std::sqrt(static_cast<double>(k)), 0.0};
      sigma = project_feasible(sigma + direction);
      const double f = sign_and_norm(rho - sigma).trace_norm;
      if (f < best_f) {
        best_f = f;
        best_sigma = sigma;
      }
      if (f < window_best - opts.stall_improvement) {
        window_best = f;
        since_improvement = 0;
      } else if (++since_improvement >= opts.stall_window) {
        break;  // stalled at this step size; anneal
      }
    }
  }

  SeparabilityResult result;
  result.distance = best_f;
  result.witness = as_density(best_sigma);
  result.converged = !capped;
  result.iterations = total_iters;
  return result;
}

SeparabilityResult distance_to_separable(const DensityMatrix& rho, const DistanceOptions& opts) {
  return distance_to_separable_matrix(rho.mat, opts);
}

namespace {

std::array<Cplx, 2> qubit_from_angles(double theta, double phi) {
  return {Cplx{std::cos(0.5 * theta), 0.0},
          std::exp(Cplx{0.0, phi}) * std::sin(0.5 * theta)};
}

std::pair<double, double> angles_of_qubit(const std::array<Cplx, 2>& v) {
  // Global phase fixed so the first amplitude is real non-negative.
  const double a0 = std::abs(v[0]);
  const double theta = 2.0 * std::atan2(std::abs(v[1]), a0);
  const Cplx rel = a0 > 1e-12 ? v[1] * std::conj(v[0] / a0) : v[1];
  return {theta, std::atan2(rel.imag(), rel.real())};
}

}  // namespace

double separable_sampling_oracle(const DensityMatrix& rho, int samples, Rng& rng) {
  require_two_qubits(rho.mat, "separable_sampling_oracle");
  constexpr int kAtoms = 16;

  struct Atom {
    std::array<double, 4> angles;  // theta_a, phi_a, theta_b, phi_b
    ComplexMatrix projector;
  };
  auto make_atom = [](const std::array<double, 4>& angles) {
    return Atom{angles, projector_of(product_vector(qubit_from_angles(angles[0], angles[1]),
                                                    qubit_from_angles(angles[2], angles[3])))};
  };

  double best = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < std::max(1, samples); ++trial) {
    // Computational-basis products plus random ones as the starting atom set.
    std::vector<Atom> atoms;
    atoms.reserve(kAtoms);
    const double pi = 3.14159265358979323846;
    for (const auto& corner : {std::array<double, 4>{0, 0, 0, 0}, {0, 0, pi, 0},
                               {pi, 0, 0, 0}, {pi, 0, pi, 0}}) {
      atoms.push_back(make_atom(corner));
    }
    while (static_cast<int>(atoms.size()) < kAtoms) {
      const auto [ta, pa] = angles_of_qubit(random_pure_qubit(rng));
      const auto [tb, pb] = angles_of_qubit(random_pure_qubit(rng));
      atoms.push_back(make_atom({ta, pa, tb, pb}));
    }
    std::vector<double> w(kAtoms, 1.0 / kAtoms);

    auto mixture = [&]() {
      ComplexMatrix s(4);
      for (int i = 0; i < kAtoms; ++i) {
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 4; ++c) {
            s(r, c) += w[static_cast<std::size_t>(i)] * atoms[static_cast<std::size_t>(i)].projector(r, c);
          }
        }
      }
      return s;
    };

    double trial_best = std::numeric_limits<double>::infinity();

    // Annealed projected-subgradient steps on the simplex of atom weights.
    auto optimize_weights = [&]() {
      std::vector<double> local_best_w = w;
      double local_best = std::numeric_limits<double>::infinity();
      for (const double step0 : {0.4, 0.08, 0.016, 0.003}) {
        for (int k = 1; k <= 40; ++k) {
          const SignInfo info = sign_and_norm(rho.mat - mixture());
          if (info.trace_norm < local_best) {
            local_best = info.trace_norm;
            local_best_w = w;
          }
          std::vector<double> next(kAtoms);
          for (int i = 0; i < kAtoms; ++i) {
            Cplx overlap = 0.0;
            for (int r = 0; r < 4; ++r) {
              for (int c = 0; c < 4; ++c) {
                overlap += info.sign(r, c) * atoms[static_cast<std::size_t>(i)].projector(c, r);
              }
            }
            next[static_cast<std::size_t>(i)] =
                w[static_cast<std::size_t>(i)] +
                (step0 / std::sqrt(static_cast<double>(k))) * overlap.real();
          }
          w = project_to_simplex(next);
        }
      }
      w = local_best_w;
      trial_best = std::min(trial_best, local_best);
      return local_best;
    };

    // Coordinate polish of each atom's product angles against the full
    // objective, weights held fixed.
    auto polish_atoms = [&]() {
      for (int i = 0; i < kAtoms; ++i) {
        if (w[static_cast<std::size_t>(i)] < 1e-6) continue;
        optim::NelderMeadOptions opts;
        opts.max_iters = 50;
        opts.step = 0.3;
        opts.f_tol = 1e-10;
        opts.x_tol = 1e-6;
        const std::array<double, 4> saved = atoms[static_cast<std::size_t>(i)].angles;
        const optim::NelderMeadResult r = optim::nelder_mead(
            [&](const std::vector<double>& x) {
              atoms[static_cast<std::size_t>(i)] = make_atom({x[0], x[1], x[2], x[3]});
              return sign_and_norm(rho.mat - mixture()).trace_norm;
            },
            {saved[0], saved[1], saved[2], saved[3]}, opts);
        atoms[static_cast<std::size_t>(i)] = make_atom({r.x[0], r.x[1], r.x[2], r.x[3]});
      }
    };

    optimize_weights();
    for (int round = 0; round < 10; ++round) {
      // Swap the lightest atom for the product state best aligned with the
      // positive part of the residual, then re-balance and polish.
      const SignInfo info = sign_and_norm(rho.mat - mixture());
      ComplexMatrix negated = info.sign;
      negated *= Cplx{-1.0, 0.0};
      const ProductMin pm = minimize_over_products(negated, rng, 40);
      const int idx = static_cast<int>(
          std::distance(w.begin(), std::min_element(w.begin(), w.end())));
      const auto [ta, pa] = angles_of_qubit(pm.a);
      const auto [tb, pb] = angles_of_qubit(pm.b);
      atoms[static_cast<std::size_t>(idx)] = make_atom({ta, pa, tb, pb});
      w[static_cast<std::size_t>(idx)] = 1.0 / kAtoms;
      w = project_to_simplex(w);
      optimize_weights();
      polish_atoms();
      optimize_weights();
    }
    best = std::min(best, trial_best);
  }
  return best;
}

namespace {

// Gradient of -tr(rho log2 sigma) with respect to sigma, via the divided
// difference kernel of the log in the sigma eigenbasis. Eigenvalues are
// floored at 1e-12 to keep the kernel finite near rank deficiency.
ComplexMatrix log_gradient(const ComplexMatrix& rho, const EigResult& es) {
  const int n = rho.dim();
  ComplexMatrix rho_tilde(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Cplx acc = 0.0;
      for (int r = 0; r < n; ++r) {
        Cplx row = 0.0;
        for (int c = 0; c < n; ++c) row += rho(r, c) * es.vectors(c, k);
        acc += std::conj(es.vectors(r, j)) * row;
      }
      rho_tilde(j, k) = acc;
    }
  }
  ComplexMatrix grad_tilde(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double a = std::max(es.values[static_cast<std::size_t>(j)], 1e-12);
      const double b = std::max(es.values[static_cast<std::size_t>(k)], 1e-12);
      const double phi = std::abs(a - b) < 1e-14 * std::max(a, b)
                             ? 1.0 / a
                             : (std::log(a) - std::log(b)) / (a - b);
      grad_tilde(j, k) = -(phi / kLn2) * rho_tilde(j, k);
    }
  }
  return es.vectors * grad_tilde * dagger(es.vectors);
}

}  // namespace

double rel_entropy_of_entanglement(const DensityMatrix& rho, int iters, Rng& rng) {
  require_two_qubits(rho.mat, "rel_entropy_of_entanglement");

  double rho_log_term = 0.0;
  {
    for (double v : eigvals_hermitian(rho.mat)) {
      if (v > 1e-15) rho_log_term += v * std::log2(v);
    }
  }

  auto objective = [&](const ComplexMatrix& sigma) {
    const EigResult es = eig_hermitian(sigma);
    double val = rho_log_term;
    for (int j = 0; j < 4; ++j) {
      Cplx weight = 0.0;
      for (int r = 0; r < 4; ++r) {
        Cplx row = 0.0;
        for (int c = 0; c < 4; ++c) row += rho.mat(r, c) * es.vectors(c, j);
        weight += std::conj(es.vectors(r, j)) * row;
      }
      const double mu = es.values[static_cast<std::size_t>(j)];
      if (mu < 1e-15) {
        if (weight.real() > 1e-11) return std::numeric_limits<double>::infinity();
        continue;
      }
      val -= weight.real() * std::log2(mu);
    }
    return std::max(0.0, val);
  };

  // Atoms of the current separable iterate; atom 0 is the maximally mixed
  // state (an interior point of the separable set) and keeps a small weight
  // floor so sigma never becomes rank deficient.
  std::vector<std::pair<double, ComplexMatrix>> atoms;
  {
    ComplexMatrix mixed = ComplexMatrix::identity(4);
    mixed *= Cplx{0.25, 0.0};
    atoms.emplace_back(1.0, std::move(mixed));
  }
  auto enforce_mixed_floor = [&]() {
    if (atoms[0].first < 1e-10) {
      atoms[0].first = 1e-10;
      double total = 0.0;
      for (const auto& [weight, atom] : atoms) total += weight;
      for (auto& [weight, atom] : atoms) weight /= total;
    }
  };
  auto assemble = [&]() {
    ComplexMatrix s(4);
    for (const auto& [weight, atom] : atoms) {
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) s(r, c) += weight * atom(r, c);
      }
    }
    return s;
  };

  ComplexMatrix sigma = assemble();
  double current = objective(sigma);

  for (int t = 0; t < iters; ++t) {
    const ComplexMatrix grad = log_gradient(rho.mat, eig_hermitian(sigma));

    const ProductMin pm = minimize_over_products(grad, rng, 2000);
    const ComplexMatrix vertex = projector_of(product_vector(pm.a, pm.b));

    // Frank-Wolfe gap certifies remaining suboptimality for the convex
    // objective; stop when negligible.
    Cplx gap_c = 0.0;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) gap_c += grad(r, c) * (sigma(c, r) - vertex(c, r));
    }
    if (gap_c.real() < 1e-10) break;

    // Golden-section line search over the convex step.
    const double gr = 0.61803398874989484820;
    double lo = 0.0, hi = 0.9999;
    double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    auto blend_objective = [&](double gamma) {
      ComplexMatrix s = sigma;
      s *= Cplx{1.0 - gamma, 0.0};
      ComplexMatrix v = vertex;
      v *= Cplx{gamma, 0.0};
      return objective(s + v);
    };
    double f1 = blend_objective(m1), f2 = blend_objective(m2);
    for (int it = 0; it < 36; ++it) {
      if (f1 <= f2) {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - gr * (hi - lo);
        f1 = blend_objective(m1);
      } else {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + gr * (hi - lo);
        f2 = blend_objective(m2);
      }
    }
    const double gamma = 0.5 * (lo + hi);
    const double f_new = blend_objective(gamma);
    if (f_new < current) {
      for (auto& [weight, atom] : atoms) weight *= (1.0 - gamma);
      atoms.emplace_back(gamma, vertex);
      enforce_mixed_floor();
      sigma = assemble();
      current = objective(sigma);
    }

    // Fully corrective sweep: re-optimize atom weights on the simplex.
    if ((t + 1) % 10 == 0 && atoms.size() > 1) {
      std::vector<double> weights;
      weights.reserve(atoms.size());
      for (const auto& [weight, atom] : atoms) weights.push_back(weight);
      auto rebuild = [&](const std::vector<double>& ws) {
        ComplexMatrix s(4);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) s(r, c) += ws[i] * atoms[i].second(r, c);
          }
        }
        return s;
      };
      double local = current;
      std::vector<double> best_w = weights;
      for (int k = 1; k <= 60; ++k) {
        const ComplexMatrix s = rebuild(weights);
        const ComplexMatrix gs = log_gradient(rho.mat, eig_hermitian(s));
        std::vector<double> grad_w(atoms.size());
        for (std::size_t i = 0; i < atoms.size(); ++i) {
          Cplx acc = 0.0;
          for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) acc += gs(r, c) * atoms[i].second(c, r);
          }
          grad_w[i] = acc.real();
        }
        std::vector<double> next(atoms.size());
        const double step = 0.2 / std::sqrt(static_cast<double>(k));
        for (std::size_t i = 0; i < atoms.size(); ++i) next[i] = weights[i] - step * grad_w[i];
        weights = project_to_simplex(next);
        // Atom 0 is the maximally mixed state; a floor on its weight keeps
        // sigma full rank so the log kernel stays well conditioned.
        if (weights[0] < 1e-10) {
          weights[0] = 1e-10;
          double total = 0.0;
          for (double w : weights) total += w;
          for (double& w : weights) w /= total;
        }
        const double f = objective(rebuild(weights));
        if (f < local) {
          local = f;
          best_w = weights;
        }
      }
      if (local < current) {
        for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].first = best_w[i];
        std::erase_if(atoms, [](const auto& a) { return a.first <= 0.0; });
        sigma = assemble();
        current = objective(sigma);
      }
    }
  }
  return current;
}

double pinsker_lambda2(const DensityMatrix& rho, Rng& rng, int er_iters) {
  const double er = rel_entropy_of_entanglement(rho, er_iters, rng);
  return std::sqrt(2.0 * kLn2 * er);
}

}  // namespace nlqc::entanglement
