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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlqc/entanglement.hpp"
#include "nlqc/gates.hpp"
#include "test_util.hpp"

using namespace nlqc;
using namespace nlqc::qmath;
using namespace nlqc::entanglement;
using nlqc::test::random_two_qubit_state;
using nlqc::test::werner_state;

namespace {

DensityMatrix dress_locally(const DensityMatrix& rho, Rng& rng) {
  const ComplexMatrix u = gates::haar_unitary(2, rng);
  const ComplexMatrix v = gates::haar_unitary(2, rng);
  return DensityMatrix{conjugate_by(kron(u, v), rho.mat), rho.dims, rho.labels};
}

DensityMatrix random_separable(Rng& rng) {
  // Explicit mixture of a few product states.
  ComplexMatrix m(4);
  const int terms = 4 + static_cast<int>(rng.next_double() * 4);
  std::vector<double> w(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& x : w) {
    x = rng.next_double() + 0.05;
    total += x;
  }
  for (int t = 0; t < terms; ++t) {
    const auto a = test::random_pure_vector(2, rng);
    const auto b = test::random_pure_vector(2, rng);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const Cplx vi = a[static_cast<std::size_t>(i / 2)] * b[static_cast<std::size_t>(i % 2)];
        const Cplx vj = a[static_cast<std::size_t>(j / 2)] * b[static_cast<std::size_t>(j % 2)];
        m(i, j) += (w[static_cast<std::size_t>(t)] / total) * vi * std::conj(vj);
      }
    }
  }
  return DensityMatrix{std::move(m), {2, 2}, {"Q", "A"}};
}

}  // namespace

TEST_CASE("concurrence closed form") {
  CHECK(concurrence(gates::bell_state()) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(concurrence(gates::classically_correlated()) == doctest::Approx(0.0).epsilon(1e-9));
  // Werner line: C = max(0, (3p-1)/2).
  CHECK(concurrence(werner_state(0.9)) == doctest::Approx(0.85).epsilon(1e-9));
  CHECK(concurrence(werner_state(0.3)) == doctest::Approx(0.0).epsilon(1e-9));

  DensityMatrix small{ComplexMatrix::identity(2), {2}, {"B"}};
  CHECK_THROWS_AS(concurrence(small), std::invalid_argument);
}

TEST_CASE("entanglement of formation closed form") {
  CHECK(eof_two_qubit(gates::bell_state()) == doctest::Approx(1.0).epsilon(1e-9));

  Rng rng(101);
  const ComplexMatrix prod = kron(test::random_density_matrix(2, 2, rng),
                                  test::random_density_matrix(2, 2, rng));
  CHECK(eof_two_qubit(DensityMatrix{prod, {2, 2}, {"Q", "A"}}) ==
        doctest::Approx(0.0).epsilon(1e-9));

  // h((1 + sqrt(1 - 0.85^2))/2), evaluated independently here.
  const double arg = 0.5 * (1.0 + std::sqrt(1.0 - 0.85 * 0.85));
  const double expected = -(arg * std::log2(arg) + (1.0 - arg) * std::log2(1.0 - arg));
  CHECK(eof_two_qubit(werner_state(0.9)) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ensemble oracle pins the closed form") {
  Rng rng(103);
  CHECK(eof_ensemble_oracle(gates::bell_state(), 4, rng) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eof_ensemble_oracle(gates::classically_correlated(), 4, rng) ==
        doctest::Approx(0.0).epsilon(1e-6));

  // Werner 0.9 from both routes.
  const double oracle = eof_ensemble_oracle(werner_state(0.9), 12, rng);
  CHECK(oracle == doctest::Approx(eof_two_qubit(werner_state(0.9))).epsilon(2e-2));
  CHECK(eof_two_qubit(werner_state(0.9)) <= oracle + 1e-6);

  // Rank-2 states: the oracle upper bound sits within [-1e-3, 5e-2] of the
  // closed form.
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng, 2);
    const double closed = eof_two_qubit(rho);
    const double upper = eof_ensemble_oracle(rho, 10, rng);
    CHECK(upper - closed >= -1e-3);
    CHECK(upper - closed <= 5e-2);
  }

  // Monotone non-increasing in restarts (same substream prefix).
  const DensityMatrix rho = random_two_qubit_state(rng);
  Rng a = Rng::substream(5, 0);
  Rng b = Rng::substream(5, 0);
  const double few = eof_ensemble_oracle(rho, 3, a);
  const double more = eof_ensemble_oracle(rho, 9, b);
  CHECK(more <= few + 1e-12);
}

TEST_CASE("oracle upper bounds the closed form on random full-rank states") {
  Rng rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng);
    CHECK(eof_two_qubit(rho) <= eof_ensemble_oracle(rho, 6, rng) + 1e-6);
  }
}

TEST_CASE("eof local unitary invariance and monotonicity") {
  Rng rng(109);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng);
    const double base = eof_two_qubit(rho);
    CHECK(eof_two_qubit(dress_locally(rho, rng)) == doctest::Approx(base).epsilon(1e-9));

    // E_f never increases under a local channel on the second factor.
    const DensityMatrix after{test::random_channel_on_last_qubit(rho.mat, 2, rng), {2, 2},
                              {"Q", "A"}};
    CHECK(eof_two_qubit(after) <= base + 1e-6);
  }
}

TEST_CASE("partial transpose spectrum") {
  const PptResult bell = is_ppt(gates::bell_state());
  CHECK_FALSE(bell.ppt);
  CHECK(bell.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-10));

  CHECK(is_ppt(gates::classically_correlated()).ppt);

  Rng rng(113);
  const ComplexMatrix prod = kron(test::random_density_matrix(2, 2, rng),
                                  test::random_density_matrix(2, 2, rng));
  CHECK(is_ppt(DensityMatrix{prod, {2, 2}, {"Q", "A"}}).ppt);

  // Werner PPT boundary at p = 1/3: min eigenvalue (1 - 3p)/4.
  CHECK(is_ppt(werner_state(0.8)).min_eigenvalue == doctest::Approx(-0.35).epsilon(1e-10));
  CHECK(is_ppt(werner_state(0.2)).ppt);
}

TEST_CASE("faithfulness: two-qubit PPT exactly matches vanishing E_f") {
  Rng rng(127);
  int separable_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    DensityMatrix rho;
    if (trial % 4 == 0) {
      rho = random_separable(rng);
    } else {
      rho = random_two_qubit_state(rng, 1 + trial % 4);
    }
    const bool ppt = is_ppt(rho).ppt;
    const bool zero_eof = eof_two_qubit(rho) <= 1e-6;
    CHECK(ppt == zero_eof);
    if (ppt) ++separable_seen;
  }
  CHECK(separable_seen > 20);  // both branches exercised
  CHECK(separable_seen < 180);
}

TEST_CASE("distance to separable: exact values on the Werner line") {
  // Twirling reduces the minimization to the Werner line itself, giving the
  // closed-form distance max(0, 1.5 (p - 1/3)) to check against.
  for (double p : {1.0, 0.85, 0.6, 0.4, 0.35}) {
    const SeparabilityResult r = distance_to_separable(werner_state(p));
    CHECK(r.distance == doctest::Approx(std::max(0.0, 1.5 * (p - 1.0 / 3.0))).epsilon(1e-6));
    CHECK(r.converged);
  }

  const SeparabilityResult at_bell = distance_to_separable(gates::bell_state());
  CHECK(at_bell.distance == doctest::Approx(1.0).epsilon(1e-6));

  // PPT inputs return exactly zero with the state itself as witness.
  const SeparabilityResult zero = distance_to_separable(gates::classically_correlated());
  CHECK(zero.distance == 0.0);
  CHECK(max_abs_diff(zero.witness.mat, gates::classically_correlated().mat) == 0.0);

  Rng rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix sep = random_separable(rng);
    if (is_ppt(sep).ppt) CHECK(distance_to_separable(sep).distance == 0.0);
  }
}

TEST_CASE("distance witnesses are feasible and certify the value") {
  Rng rng(137);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng);
    const SeparabilityResult r = distance_to_separable(rho);
    CHECK(r.distance >= 0.0);
    CHECK(is_ppt(r.witness).min_eigenvalue >= -1e-8);
    CHECK(std::abs(r.witness.mat.trace().real() - 1.0) < 1e-9);
    CHECK(r.distance <= trace_norm_distance(rho, r.witness) + 1e-6);
  }
}

TEST_CASE("distance is locally unitary invariant within optimizer tolerance") {
  Rng rng(139);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 10; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng, 1 + trial % 3);
    const double base = distance_to_separable(rho).distance;
    if (base < 1e-6) continue;  // PPT shortcut is trivially invariant
    ++checked;
    const double dressed = distance_to_separable(dress_locally(rho, rng)).distance;
    CHECK(std::abs(dressed - base) <= 1e-4);
  }
  CHECK(checked == 10);
}

TEST_CASE("sampling oracle validates the distance solver") {
  Rng rng(149);

  // Separable inputs are represented to high accuracy.
  CHECK(separable_sampling_oracle(gates::classically_correlated(), 2, rng) <= 1e-3);
  CHECK(separable_sampling_oracle(werner_state(0.25), 2, rng) <= 1e-3);

  // The oracle can never undercut the certified minimum.
  const double bell_oracle = separable_sampling_oracle(gates::bell_state(), 2, rng);
  CHECK(bell_oracle >= distance_to_separable(gates::bell_state()).distance - 1e-6);
  CHECK(bell_oracle == doctest::Approx(1.0).epsilon(2e-2));

  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng, 1 + trial % 4);
    const double direct = distance_to_separable(rho).distance;
    const double sampled = separable_sampling_oracle(rho, 2, rng);
    CHECK(sampled >= direct - 1e-6);
    CHECK(std::abs(sampled - direct) <= 0.05);
  }
}

TEST_CASE("relative entropy of entanglement") {
  Rng rng(151);

  CHECK(rel_entropy_of_entanglement(gates::classically_correlated(), 200, rng) <= 1e-4);
  CHECK(rel_entropy_of_entanglement(werner_state(0.3), 250, rng) <= 1e-4);

  // For a pure state E_R equals the entropy of entanglement, computed here
  // independently as the entropy of the reduced state.
  const double entanglement_entropy =
      von_neumann_entropy(partial_trace(gates::bell_state(), {"Q"}));
  const double er_bell = rel_entropy_of_entanglement(gates::bell_state(), 300, rng);
  CHECK(er_bell == doctest::Approx(entanglement_entropy).epsilon(0.01));

  // Pinsker consistency against the direct trace-norm minimization.
  const double inv_2ln2 = 1.0 / (2.0 * std::log(2.0));
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng, 1 + trial % 4);
    const double er = rel_entropy_of_entanglement(rho, 150, rng);
    const double dist = distance_to_separable(rho).distance;
    CHECK(er >= inv_2ln2 * dist * dist - 1e-6);
  }
}

TEST_CASE("pinsker lambda2 over-estimates the distance") {
  Rng rng(157);
  CHECK(pinsker_lambda2(gates::bell_state(), rng, 300) ==
        doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(0.01));

  int nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_two_qubit_state(rng, 1 + trial % 4);
    const double direct = distance_to_separable(rho).distance;
    CHECK(pinsker_lambda2(rho, rng) >= direct - 1e-6);
    if (direct > 1e-3) ++nontrivial;
  }
  CHECK(nontrivial > 10);
}
