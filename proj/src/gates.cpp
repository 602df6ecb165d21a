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

#include "nlqc/gates.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace nlqc::gates {

namespace {

using qmath::Cplx;
using qmath::ComplexMatrix;

constexpr double kPi = std::numbers::pi;

ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Cplx>> rows) {
  ComplexMatrix m(static_cast<int>(rows.size()));
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (const Cplx& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

const Cplx kI{0.0, 1.0};

ComplexMatrix cnot_matrix() {
  return from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
}

ComplexMatrix dcnot_matrix() {
  return from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}});
}

ComplexMatrix berkeley_matrix() {
  const double c1 = std::cos(kPi / 8), s1 = std::sin(kPi / 8);
  const double c3 = std::cos(3 * kPi / 8), s3 = std::sin(3 * kPi / 8);
  return from_rows({{c1, 0, 0, kI * s1},
                    {0, c3, kI * s3, 0},
                    {0, kI * s3, c3, 0},
                    {kI * s1, 0, 0, c1}});
}

// exp(-i pi/4 X(x)X): cos(pi/4) on the diagonal, -i sin(pi/4) on the
// anti-diagonal. The quarter-turn XX rotation; it maps |Psi+> to itself up
// to a phase.
ComplexMatrix rxx_matrix() {
  const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  const Cplx ms = -kI * s;
  return from_rows({{c, 0, 0, ms}, {0, c, ms, 0}, {0, ms, c, 0}, {ms, 0, 0, c}});
}

ComplexMatrix iswap_matrix() {
  return from_rows({{1, 0, 0, 0}, {0, 0, kI, 0}, {0, kI, 0, 0}, {0, 0, 0, 1}});
}

ComplexMatrix sqrt_swap_matrix() {
  const Cplx p{0.5, 0.5}, m{0.5, -0.5};
  return from_rows({{1, 0, 0, 0}, {0, p, m, 0}, {0, m, p, 0}, {0, 0, 0, 1}});
}

ComplexMatrix sycamore_matrix() {
  const Cplx phase = std::exp(-kI * (kPi / 6));
  return from_rows({{1, 0, 0, 0}, {0, 0, -kI, 0}, {0, -kI, 0, 0}, {0, 0, 0, phase}});
}

ComplexMatrix magic_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  return from_rows({{r, r * kI, 0, 0},
                    {0, 0, r * kI, r},
                    {0, 0, r * kI, -r},
                    {r, -r * kI, 0, 0}});
}

ComplexMatrix dagwood_bumstead_matrix() {
  const double c = std::cos(3 * kPi / 8), s = std::sin(3 * kPi / 8);
  return from_rows({{1, 0, 0, 0}, {0, c, -kI * s, 0}, {0, -kI * s, c, 0}, {0, 0, 0, 1}});
}

ComplexMatrix cs_matrix() {
  return from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, kI}});
}

ComplexMatrix ct_matrix() {
  const Cplx phase = std::exp(kI * (kPi / 4));
  return from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, phase}});
}

ComplexMatrix ecr_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  return from_rows({{0, 0, r, r * kI},
                    {0, 0, r * kI, r},
                    {r, -r * kI, 0, 0},
                    {-r * kI, r, 0, 0}});
}

ComplexMatrix csx_matrix() {
  const Cplx p = std::exp(kI * (kPi / 4)) / std::sqrt(2.0);
  const Cplx m = std::exp(-kI * (kPi / 4)) / std::sqrt(2.0);
  return from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, p, m}, {0, 0, m, p}});
}

ComplexMatrix swap_matrix() {
  return from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
}

struct CatalogEntry {
  std::string canonical;
  ComplexMatrix (*build)();
};

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"CNOT", cnot_matrix},
      {"DCNOT", dcnot_matrix},
      {"B", berkeley_matrix},
      {"RXX", rxx_matrix},
      {"iSWAP", iswap_matrix},
      {"SqrtSWAP", sqrt_swap_matrix},
      {"Sycamore", sycamore_matrix},
      {"Magic", magic_matrix},
      {"DagwoodBumstead", dagwood_bumstead_matrix},
      {"CS", cs_matrix},
      {"CT", ct_matrix},
      {"ECR", ecr_matrix},
      {"CSX", csx_matrix},
      {"SWAP", swap_matrix},
      {"Identity", [] { return ComplexMatrix::identity(4); }},
  };
  return entries;
}

std::string normalize(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (ch == ' ' || ch == '-' || ch == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

const std::map<std::string, std::string>& alias_map() {
  static const std::map<std::string, std::string> aliases = [] {
    std::map<std::string, std::string> m;
    for (const CatalogEntry& e : catalog()) m[normalize(e.canonical)] = e.canonical;
    m["xx"] = "RXX";
    m["echoedcrossresonance"] = "ECR";
    m["berkeley"] = "B";
    m["berkeleyb"] = "B";
    m["db"] = "DagwoodBumstead";
    m["sqswap"] = "SqrtSWAP";
    m["swap12"] = "SqrtSWAP";
    m["id"] = "Identity";
    m["i"] = "Identity";
    return m;
  }();
  return aliases;
}

}  // namespace

const std::vector<std::string>& table_gate_names() {
  static const std::vector<std::string> names = {
      "CNOT", "DCNOT", "B",  "RXX", "iSWAP", "SqrtSWAP", "Sycamore",
      "Magic", "DagwoodBumstead", "CS", "CT", "ECR", "CSX"};
  return names;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CatalogEntry& e : catalog()) out.push_back(e.canonical);
    return out;
  }();
  return names;
}

Gate catalog_lookup(std::string_view name) {
  const auto& aliases = alias_map();
  const auto it = aliases.find(normalize(name));
  if (it == aliases.end()) {
    std::string msg = "unknown gate '" + std::string(name) + "'; valid names:";
    for (const std::string& n : catalog_names()) msg += " " + n;
    throw UnknownGateError(msg);
  }
  for (const CatalogEntry& e : catalog()) {
    if (e.canonical == it->second) return Gate{e.canonical, e.build()};
  }
  throw UnknownGateError("catalog inconsistency for gate " + std::string(name));
}

qmath::DensityMatrix bell_state() {
  const double r = 1.0 / std::sqrt(2.0);
  qmath::PureState psi{{r, 0.0, 0.0, r}};
  return qmath::projector(psi, {2, 2}, {"Q", "A"});
}

qmath::DensityMatrix classically_correlated() {
  ComplexMatrix m(4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return qmath::make_density(std::move(m), {2, 2}, {"Q", "A"});
}

qmath::ComplexMatrix haar_unitary(int dim, Rng& rng) {
  // Ginibre draw, row major, real part before imaginary part.
  ComplexMatrix g(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = rng.next_gaussian();
      const double im = rng.next_gaussian();
      g(r, c) = Cplx{re, im};
    }
  }

  // Modified Gram-Schmidt on columns. Normalizing against a real positive
  // column norm fixes the triangular factor to a positive diagonal, which is
  // the gauge that makes the orthonormal factor Haar distributed.
  ComplexMatrix q(dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<Cplx> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        Cplx proj = 0.0;
        for (int i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * v[static_cast<std::size_t>(i)];
        for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (const Cplx& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (int i = 0; i < dim; ++i) q(i, j) = v[static_cast<std::size_t>(i)] / norm;
  }
  return q;
}

Gate haar_random(Rng& rng) { return Gate{"haar", haar_unitary(4, rng)}; }

}  // namespace nlqc::gates
