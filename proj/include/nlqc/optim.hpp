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

#include <functional>
#include <vector>

namespace nlqc::optim {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
  int max_iters = 2000;
  double f_tol = 1e-9;   // simplex value spread
  double x_tol = 1e-7;   // simplex vertex spread
  double step = 0.25;    // initial simplex edge
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes f by the Nelder-Mead simplex method with the standard
/// reflection/expansion/contraction/shrink coefficients (1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts = {});

struct MultistartResult {
  std::vector<double> x;
  double value = 0.0;
  long total_iterations = 0;
  bool converged = false;
  int best_start = -1;
};

/// Runs nelder_mead from every start and keeps the lowest value; ties are
/// broken by lowest start index, which keeps concurrent evaluation schemes
/// deterministic.
MultistartResult multistart_minimize(const Objective& f,
                                     const std::vector<std::vector<double>>& starts,
                                     const NelderMeadOptions& opts = {});

}  // namespace nlqc::optim
