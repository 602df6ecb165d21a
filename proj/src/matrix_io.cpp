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

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlqc/gates.hpp"

#include <json.hpp>

namespace nlqc::gates {

namespace {

using qmath::Cplx;
using qmath::ComplexMatrix;

ComplexMatrix parse_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixFileError("cannot open matrix file: " + path.string());

  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw MatrixFileError("matrix file parse failure (" + path.string() + "): " + e.what());
  }

  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re") || !doc.contains("im")) {
    throw MatrixFileError("matrix file must be an object with fields dim, re, im");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() <= 0) {
    throw MatrixFileError("matrix file: dim must be a positive integer");
  }
  const int dim = doc["dim"].get<int>();

  auto read_part = [&](const char* key) {
    const nlohmann::json& rows = doc[key];
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
      throw MatrixFileError(std::string("matrix file: field '") + key + "' must be a " +
                            std::to_string(dim) + "x" + std::to_string(dim) + " array");
    }
    std::vector<std::vector<double>> out;
    for (const nlohmann::json& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != dim) {
        throw MatrixFileError(std::string("matrix file: field '") + key + "' has a row of wrong length");
      }
      std::vector<double> r;
      for (const nlohmann::json& v : row) {
        if (!v.is_number()) {
          throw MatrixFileError(std::string("matrix file: non-numeric entry in '") + key + "'");
        }
        r.push_back(v.get<double>());
      }
      out.push_back(std::move(r));
    }
    return out;
  };

  const auto re = read_part("re");
  const auto im = read_part("im");

  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      m(r, c) = Cplx{re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                     im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]};
    }
  }
  if (!m.all_finite()) throw MatrixFileError("matrix file: non-finite entry");
  return m;
}

}  // namespace

Gate gate_from_file(const std::filesystem::path& path) {
  ComplexMatrix m = parse_matrix(path);
  const double residual = qmath::unitarity_defect(m);
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "matrix in " << path.string() << " is not unitary; ||U^dagger U - I||_max = "
        << residual;
    throw NonUnitaryError(msg.str(), residual);
  }
  return Gate{path.stem().string(), std::move(m)};
}

qmath::DensityMatrix density_from_file(const std::filesystem::path& path) {
  ComplexMatrix m = parse_matrix(path);
  const int dim = m.dim();
  std::vector<int> dims;
  std::vector<std::string> labels;
  if (dim == 4) {
    dims = {2, 2};
    labels = {"Q", "A"};
  } else if (dim == 2) {
    dims = {2};
    labels = {"B"};
  } else {
    throw MatrixFileError("density file: expected dim 2 or 4, got " + std::to_string(dim));
  }
  qmath::DensityMatrix rho{std::move(m), std::move(dims), std::move(labels)};
  try {
    qmath::validate_density(rho, /*check_psd=*/true);
  } catch (const std::invalid_argument& e) {
    throw MatrixFileError("density file " + path.string() + ": " + e.what());
  }
  return rho;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json doc;
  doc["dim"] = m.dim();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int r = 0; r < m.dim(); ++r) {
    nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
    for (int c = 0; c < m.dim(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump(2);
}

}  // namespace nlqc::gates
