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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "nlqc/gates.hpp"
#include "test_util.hpp"

using namespace nlqc;
using namespace nlqc::qmath;
using nlqc::gates::catalog_lookup;

namespace {

// Independent Haar sampler for the moment oracle: mt19937_64 Gaussians with a
// local Gram-Schmidt, sharing no code path with gates::haar_unitary.
ComplexMatrix reference_haar(std::mt19937_64& eng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) g(r, c) = Cplx{normal(eng), normal(eng)};
  }
  ComplexMatrix q(4);
  for (int j = 0; j < 4; ++j) {
    std::array<Cplx, 4> v{};
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = g(i, j);
    for (int k = 0; k < j; ++k) {
      Cplx proj = 0.0;
      for (int i = 0; i < 4; ++i) proj += std::conj(q(i, k)) * v[static_cast<std::size_t>(i)];
      for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] -= proj * q(i, k);
    }
    double norm = 0.0;
    for (const Cplx& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (int i = 0; i < 4; ++i) q(i, j) = v[static_cast<std::size_t>(i)] / norm;
  }
  return q;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("catalog matrices match their displayed entries") {
  const double c8 = std::cos(std::numbers::pi / 8), s8 = std::sin(std::numbers::pi / 8);
  const double c38 = std::cos(3 * std::numbers::pi / 8), s38 = std::sin(3 * std::numbers::pi / 8);

  const ComplexMatrix cnot = catalog_lookup("CNOT").matrix;
  CHECK(cnot(2, 3).real() == 1.0);
  CHECK(cnot(3, 2).real() == 1.0);
  CHECK(cnot(2, 2).real() == 0.0);

  const ComplexMatrix cs = catalog_lookup("CS").matrix;
  CHECK(cs(3, 3) == Cplx{0.0, 1.0});

  const ComplexMatrix ct = catalog_lookup("CT").matrix;
  CHECK(ct(3, 3).real() == doctest::Approx(std::cos(std::numbers::pi / 4)));
  CHECK(ct(3, 3).imag() == doctest::Approx(std::sin(std::numbers::pi / 4)));

  const ComplexMatrix syc = catalog_lookup("Sycamore").matrix;
  CHECK(syc(3, 3).real() == doctest::Approx(std::cos(std::numbers::pi / 6)));
  CHECK(syc(3, 3).imag() == doctest::Approx(-std::sin(std::numbers::pi / 6)));
  CHECK(syc(1, 2) == Cplx{0.0, -1.0});

  const ComplexMatrix b = catalog_lookup("B").matrix;
  CHECK(b(0, 0).real() == doctest::Approx(c8));
  CHECK(b(0, 3).imag() == doctest::Approx(s8));
  CHECK(b(1, 1).real() == doctest::Approx(c38));
  CHECK(b(1, 2).imag() == doctest::Approx(s38));

  const ComplexMatrix db = catalog_lookup("DagwoodBumstead").matrix;
  CHECK(db(1, 1).real() == doctest::Approx(c38));
  CHECK(db(1, 2).imag() == doctest::Approx(-s38));
  CHECK(db(0, 0).real() == 1.0);
  CHECK(db(3, 3).real() == 1.0);

  const ComplexMatrix rxx = catalog_lookup("RXX").matrix;
  const double c4 = std::cos(std::numbers::pi / 4);
  CHECK(rxx(0, 0).real() == doctest::Approx(c4));
  CHECK(rxx(0, 3).imag() == doctest::Approx(-c4));
  CHECK(rxx(1, 2).imag() == doctest::Approx(-c4));

  const ComplexMatrix sq = catalog_lookup("SqrtSWAP").matrix;
  CHECK(sq(1, 1) == Cplx{0.5, 0.5});
  CHECK(sq(1, 2) == Cplx{0.5, -0.5});

  const ComplexMatrix magic = catalog_lookup("Magic").matrix;
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(magic(0, 0).real() == doctest::Approx(r));
  CHECK(magic(0, 1).imag() == doctest::Approx(r));
  CHECK(magic(3, 1).imag() == doctest::Approx(-r));

  const ComplexMatrix ecr = catalog_lookup("ECR").matrix;
  CHECK(ecr(0, 2).real() == doctest::Approx(r));
  CHECK(ecr(0, 3).imag() == doctest::Approx(r));
  CHECK(ecr(2, 1).imag() == doctest::Approx(-r));

  const ComplexMatrix csx = catalog_lookup("CSX").matrix;
  CHECK(csx(2, 2).real() == doctest::Approx(0.5));
  CHECK(csx(2, 2).imag() == doctest::Approx(0.5));
  CHECK(csx(2, 3).imag() == doctest::Approx(-0.5));
}

TEST_CASE("every catalog gate is unitary to 1e-10") {
  for (const std::string& name : gates::catalog_names()) {
    const gates::Gate g = catalog_lookup(name);
    CHECK_MESSAGE(unitarity_defect(g.matrix) <= 1e-10, name);
  }
}

TEST_CASE("lookup aliases and errors") {
  CHECK(catalog_lookup("cnot").name == "CNOT");
  CHECK(catalog_lookup("XX").name == "RXX");
  CHECK(catalog_lookup("EchoedCrossResonance").name == "ECR");
  CHECK(catalog_lookup("Dagwood Bumstead").name == "DagwoodBumstead");
  CHECK(catalog_lookup("berkeley b").name == "B");
  CHECK(catalog_lookup("sqrt-swap").name == "SqrtSWAP");
  CHECK_THROWS_AS(catalog_lookup("NOPE"), gates::UnknownGateError);
  try {
    catalog_lookup("NOPE");
  } catch (const gates::UnknownGateError& e) {
    CHECK(std::string(e.what()).find("CNOT") != std::string::npos);
  }
}

TEST_CASE("reference states") {
  const DensityMatrix bell = gates::bell_state();
  CHECK(bell.mat.trace().real() == doctest::Approx(1.0));
  const DensityMatrix q = partial_trace(bell, {"Q"});
  CHECK(q.mat(0, 0).real() == doctest::Approx(0.5));
  CHECK(mutual_information(gates::classically_correlated(), {"Q"}, {"A"}) == doctest::Approx(1.0));
}

TEST_CASE("local-inequivalence witness states") {
  // CNOT maps the Bell state on its acted wires to a product state.
  const ComplexMatrix cnot = catalog_lookup("CNOT").matrix;
  std::vector<Cplx> bell_vec = {1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
  auto apply = [](const ComplexMatrix& u, const std::vector<Cplx>& v) {
    std::vector<Cplx> out(4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(i)] += u(i, j) * v[static_cast<std::size_t>(j)];
    }
    return out;
  };
  auto marginal_entropy = [](const std::vector<Cplx>& v) {
    ComplexMatrix red(2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        red(i, j) = v[static_cast<std::size_t>(2 * i)] * std::conj(v[static_cast<std::size_t>(2 * j)]) +
                    v[static_cast<std::size_t>(2 * i + 1)] * std::conj(v[static_cast<std::size_t>(2 * j + 1)]);
      }
    }
    return entropy_of_matrix(red);
  };
  CHECK(marginal_entropy(apply(cnot, bell_vec)) == doctest::Approx(0.0).epsilon(1e-9));

  // RXX maps the Bell state to an entangled (in fact still maximally
  // entangled) state.
  const ComplexMatrix rxx = catalog_lookup("RXX").matrix;
  CHECK(marginal_entropy(apply(rxx, bell_vec)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("haar determinism and unitarity") {
  Rng a = Rng::substream(42, 0);
  Rng b = Rng::substream(42, 0);
  const gates::Gate ua = gates::haar_random(a);
  const gates::Gate ub = gates::haar_random(b);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(ua.matrix(i, j).real() == ub.matrix(i, j).real());
      CHECK(ua.matrix(i, j).imag() == ub.matrix(i, j).imag());
    }
  }

  Rng rng(99);
  for (int s = 0; s < 200; ++s) {
    CHECK(unitarity_defect(gates::haar_random(rng).matrix) <= 1e-10);
  }
}

TEST_CASE("haar moment |tr U|^2 against an independent sampler") {
  Rng rng(4242);
  double mean = 0.0;
  const int n = 5000;
  for (int s = 0; s < n; ++s) {
    mean += std::norm(gates::haar_random(rng).matrix.trace());
  }
  mean /= n;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.1));

  std::mt19937_64 eng(777);
  double ref_mean = 0.0;
  for (int s = 0; s < n; ++s) ref_mean += std::norm(reference_haar(eng).trace());
  ref_mean /= n;
  CHECK(ref_mean == doctest::Approx(1.0).epsilon(0.1));
  CHECK(std::abs(mean - ref_mean) < 0.1);
}

TEST_CASE("haar first-moment isotropy under a fixed local rotation") {
  Rng rng(31415);
  const ComplexMatrix v = gates::catalog_lookup("CNOT").matrix;
  Cplx mean_entry = 0.0, mean_rotated = 0.0;
  double mean_sq = 0.0;
  const int n = 3000;
  for (int s = 0; s < n; ++s) {
    const ComplexMatrix u = gates::haar_random(rng).matrix;
    mean_entry += u(0, 0);
    mean_sq += std::norm(u(0, 0));
    mean_rotated += (v * u)(0, 0);
  }
  mean_entry /= n;
  mean_rotated /= n;
  mean_sq /= n;
  CHECK(std::abs(mean_entry) < 0.1);
  CHECK(std::abs(mean_rotated) < 0.1);
  CHECK(mean_sq == doctest::Approx(0.25).epsilon(0.4));
}

TEST_CASE("gate file round trip and validation") {
  const auto good = temp_file("nlqc_cnot.json");
  {
    std::ofstream out(good);
    out << gates::matrix_to_json(catalog_lookup("CNOT").matrix);
  }
  const gates::Gate loaded = gates::gate_from_file(good);
  CHECK(max_abs_diff(loaded.matrix, catalog_lookup("CNOT").matrix) < 1e-15);

  // A density matrix is rejected as non-unitary, with the residual reported.
  const auto density = temp_file("nlqc_density.json");
  {
    std::ofstream out(density);
    out << gates::matrix_to_json(gates::bell_state().mat);
  }
  CHECK_THROWS_AS(gates::gate_from_file(density), gates::NonUnitaryError);
  try {
    gates::gate_from_file(density);
  } catch (const gates::NonUnitaryError& e) {
    CHECK(e.residual > 0.1);
  }
  CHECK_NOTHROW(gates::density_from_file(density));

  // Mismatched shapes are a parse error.
  const auto bad = temp_file("nlqc_bad.json");
  {
    std::ofstream out(bad);
    out << "{\"dim\": 4, \"re\": [[1,0],[0,1]], \"im\": [[0,0],[0,0]]}";
  }
  CHECK_THROWS_AS(gates::gate_from_file(bad), gates::MatrixFileError);

  std::filesystem::remove(good);
  std::filesystem::remove(density);
  std::filesystem::remove(bad);
}

TEST_CASE("rng substreams are deterministic and decorrelated") {
  CHECK(Rng::mix(42, 0) == Rng::mix(42, 0));
  CHECK(Rng::mix(42, 0) != Rng::mix(42, 1));
  CHECK(Rng::mix(42, 0) != Rng::mix(43, 0));

  // Uniformity sanity for the double stream.
  Rng rng(5);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) mean += rng.next_double();
  mean /= 20000;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));

  // Gaussian moments.
  Rng g(6);
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double x = g.next_gaussian();
    m1 += x;
    m2 += x * x;
  }
  m1 /= 20000;
  m2 /= 20000;
  CHECK(std::abs(m1) < 0.03);
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.05));
}
