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

#include "nlqc/qmath.hpp"
#include "nlqc/rng.hpp"

namespace nlqc::entanglement {

/// Result of a distance-to-separable computation. `distance` is a certified
/// upper bound on the true minimum: `witness` is a feasible separable (PPT)
/// state and distance <= ||rho - witness||_1 + 1e-6. Over-estimates weaken but
/// never invalidate the bounds built on top, so no uncertified lower estimate
/// is ever returned.
struct SeparabilityResult {
  enum class Method { direct, pinsker };
  double distance = 0.0;
  qmath::DensityMatrix witness;
  Method method = Method::direct;
  bool converged = true;
  int iterations = 0;
};

/// Wootters concurrence of a two-qubit state, in [0, 1].
double concurrence(const qmath::DensityMatrix& rho);
double concurrence_matrix(const qmath::ComplexMatrix& rho);

/// Entanglement of formation of a two-qubit state in bits, via the
/// concurrence closed form E_f = h((1 + sqrt(1 - C^2))/2).
double eof_two_qubit(const qmath::DensityMatrix& rho);
double eof_two_qubit_matrix(const qmath::ComplexMatrix& rho);

/// Randomized upper bound on the entanglement of formation obtained by
/// searching ensemble decompositions directly (random isometries on the
/// purifying system of up to 8 ensemble members, refined by pairwise member
/// rotations). Independent of the concurrence closed form: member
/// entanglement is the entropy of the reduced state. Non-increasing in
/// `restarts`.
double eof_ensemble_oracle(const qmath::DensityMatrix& rho, int restarts, Rng& rng);

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

/// Partial transpose on the second block of a bipartite d1 x d2 matrix.
qmath::ComplexMatrix partial_transpose(const qmath::ComplexMatrix& m, int d1, int d2);

/// Positivity of the partial transpose across the cut after `cut` leading
/// subsystems. For two qubits PPT is exactly separability.
PptResult is_ppt(const qmath::DensityMatrix& rho, int cut = 1);
PptResult is_ppt_matrix(const qmath::ComplexMatrix& rho, int d1, int d2);

struct DistanceOptions {
  int max_iters = 5000;           // total projected-subgradient iterations
  double stall_improvement = 1e-7;
  int stall_window = 50;
  int anneal_phases = 5;          // step constant shrinks 4x per phase
  double initial_step = 0.25;
  const qmath::ComplexMatrix* warm_start = nullptr;
};

/// min over separable sigma of ||rho - sigma||_1 for a two-qubit state,
/// computed over the PPT set (equal to the separable set at 2x2) by projected
/// subgradient with Dykstra projections onto {PSD, unit trace} and {PPT}.
/// Returns 0 exactly when rho itself is PPT.
SeparabilityResult distance_to_separable(const qmath::DensityMatrix& rho,
                                         const DistanceOptions& opts = {});
SeparabilityResult distance_to_separable_matrix(const qmath::ComplexMatrix& rho,
                                                const DistanceOptions& opts = {});

/// Upper-bound oracle for the distance to separable: mixtures of up to 16
/// random product states with weight optimization and greedy atom
/// replacement. Used to validate distance_to_separable.
double separable_sampling_oracle(const qmath::DensityMatrix& rho, int samples, Rng& rng);

/// Upper bound on the relative entropy of entanglement E_R in bits, by
/// conditional-gradient iteration over the separable set: each step minimizes
/// the linearization tr(G sigma) over product states (2000 random Bloch-pair
/// seeds plus alternating eigenvector refinement), then takes the best convex
/// step. Objective is non-increasing across iterations.
double rel_entropy_of_entanglement(const qmath::DensityMatrix& rho, int iters, Rng& rng);

/// sqrt(2 ln2 * E_R upper bound): a valid over-estimate of the distance to
/// separable via Pinsker's inequality.
double pinsker_lambda2(const qmath::DensityMatrix& rho, Rng& rng, int er_iters = 150);

}  // namespace nlqc::entanglement
