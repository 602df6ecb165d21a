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

#include <string>
#include <vector>

#include "nlqc/entanglement.hpp"
#include "nlqc/gates.hpp"
#include "nlqc/qmath.hpp"
#include "nlqc/rng.hpp"

namespace nlqc::bounds {

enum class Technique { cc, ce };
enum class OptimizeSense { maximize, minimize };
enum class Orientation { as_given, swapped };

struct OptimizerMeta {
  int restarts = 0;
  long iterations = 0;
  bool converged = true;
};

/// One evaluated lower bound on the entanglement of formation any resource
/// state needs to implement the gate as a one-round non-local computation.
///
///   cc: bound = max(0, (lambda1 - lambda2)/2), lambda_i in bits.
///   ce: bound = max(0, lambda1 - 2*lambda2^(1/4)); lambda1 in bits, lambda2
///       in trace-norm units, only meaningful when lambda2 <= 1.
struct BoundReport {
  std::string gate_name;
  Technique technique = Technique::cc;
  std::string reference;  // "cc", "bell", "cc|bell", or "custom"
  Orientation orientation = Orientation::as_given;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double bound = 0.0;
  qmath::DensityMatrix phi1_witness;  // control input on B achieving lambda1
  qmath::DensityMatrix phi2_witness;  // control input on B achieving lambda2
  OptimizerMeta meta;
  bool applicable = true;  // false carries the not-controllably-* flag
  std::string flag;        // human-readable reason when !applicable
};

/// Diamond-norm noise parameters. The cc theorem needs epsilon < 1/4.
struct NoiseTerms {
  double epsilon = 0.0;
  int n_a = 1;

  bool in_range() const { return epsilon >= 0.0 && epsilon <= 2.0; }
  bool cc_admissible() const { return epsilon >= 0.0 && epsilon < 0.25; }
};

struct ReferenceChoice {
  std::string tag;  // "bell", "cc", "custom"
  qmath::DensityMatrix state;
};

/// The default reference pair {Psi+, rho_cc}.
std::vector<ReferenceChoice> default_references();

struct LambdaResult {
  double value = 0.0;
  qmath::DensityMatrix witness;
  OptimizerMeta meta;
};

/// Extremal mutual information I(Q:A) of U_AB (P_QA (x) phi_B) U_AB^dagger
/// over single-qubit inputs phi_B in the closed Bloch ball, by multistart
/// Nelder-Mead (6 Pauli eigenstates + maximally mixed center + random ball
/// points, `restarts` starts in total).
LambdaResult cc_lambda(const gates::Gate& u, const qmath::DensityMatrix& p_qa,
                       OptimizeSense sense, Rng& rng, int restarts = 32);

/// Best controllable-correlation report over the given references and, when
/// requested, both wire orientations (U and SWAP U SWAP). References within
/// 1e-3 of the best are reported as a tie.
BoundReport cc_bound(const gates::Gate& u, const std::vector<ReferenceChoice>& refs,
                     bool try_both_orientations, Rng& rng, int restarts = 32);
BoundReport cc_bound(const gates::Gate& u, Rng& rng, int restarts = 32);

/// max over pure phi1 of E_f(Q:A) of the QA marginal of U(Psi+ (x) phi1)U^dagger.
/// Convexity of E_f makes a pure maximizer sufficient.
LambdaResult ce_lambda1(const gates::Gate& u, Rng& rng, int restarts = 32);

/// min over phi2 in the full Bloch ball of the trace-norm distance of the QA
/// marginal to the separable set. Certified upper bound with a feasible
/// separable witness; exact 0 whenever a PPT marginal is reachable.
LambdaResult ce_lambda2(const gates::Gate& u, Rng& rng, int restarts = 32);

/// Controllable-entanglement report: bound = max(0, lambda1 - 2 lambda2^(1/4)),
/// flagged not-controllably-entangled when lambda1 <= 0, lambda2 > 1, or the
/// bound expression is non-positive.
BoundReport ce_bound(const gates::Gate& u, Rng& rng, int restarts = 32);

/// Delta(x, n_A) = 3 n_A sqrt(x) + 2 (1 + sqrt(x)) h(sqrt(x)/(1 + sqrt(x))).
double delta_correction(double x, int n_a);

/// max(0, (lambda1 - lambda2)/2 - Delta(2 sqrt(eps), n_A)); requires eps < 1/4.
double noisy_cc_bound(double lambda1, double lambda2, double eps, int n_a);

/// max(0, lambda1 - 2 lambda2^(1/4) - 2^(9/8) gamma^(1/16)); requires
/// lambda2 <= 1 and gamma >= 0.
double noisy_ce_bound(double lambda1, double lambda2, double gamma);

struct RepetitionInapplicable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// n-fold parallel repetition: n * bound. For ce this requires lambda2 below
/// 1e-6; larger lambda2 is refused because the repeated gate would violate
/// the lambda2 <= 1 side condition.
double parallel_repetition(const BoundReport& report, int n);

/// (g1, g2) of the dimension bound: eps' = eps + lambda2,
/// g1 = n_Q (eta(eps) + eta(sqrt(eps'))), g2 = H(eta(eps)) + H(eta(sqrt(eps'))).
std::pair<double, double> dimension_error_terms(double eps, double lambda2, int n_q);

/// QA marginal of (I_Q (x) U_AB)(P_QA (x) phi_B)(...)^dagger as an affine map
/// of the Bloch vector of phi_B; precomputing the four Pauli components makes
/// the optimizer objectives cheap.
class ControlMarginal {
 public:
  ControlMarginal(const qmath::ComplexMatrix& u, const qmath::ComplexMatrix& p_qa);
  qmath::ComplexMatrix marginal(const std::array<double, 3>& bloch) const;

 private:
  qmath::ComplexMatrix k0_, kx_, ky_, kz_;
};

}  // namespace nlqc::bounds
