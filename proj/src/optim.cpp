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

#include "nlqc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nlqc::optim {

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> x(static_cast<std::size_t>(n) + 1, x0);
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += opts.step;

  std::vector<double> fx(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) fx[static_cast<std::size_t>(i)] = f(x[static_cast<std::size_t>(i)]);

  std::vector<int> idx(static_cast<std::size_t>(n) + 1);
  std::iota(idx.begin(), idx.end(), 0);

  std::vector<double> centroid(static_cast<std::size_t>(n)), xr(static_cast<std::size_t>(n)),
      xe(static_cast<std::size_t>(n)), xc(static_cast<std::size_t>(n));

  NelderMeadResult result;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return fx[static_cast<std::size_t>(a)] < fx[static_cast<std::size_t>(b)];
    });
    const int best = idx[0], worst = idx[static_cast<std::size_t>(n)];
    const int second_worst = idx[static_cast<std::size_t>(n) - 1];

    double x_spread = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < n; ++j) {
        x_spread = std::max(x_spread, std::abs(x[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])][static_cast<std::size_t>(j)] -
                                               x[static_cast<std::size_t>(best)][static_cast<std::size_t>(j)]));
      }
    }
    if (std::abs(fx[static_cast<std::size_t>(worst)] - fx[static_cast<std::size_t>(best)]) <= opts.f_tol &&
        x_spread <= opts.x_tol) {
      result.converged = true;
      break;
    }

    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += x[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])][static_cast<std::size_t>(j)];
      centroid[static_cast<std::size_t>(j)] = s / n;
    }

    for (int j = 0; j < n; ++j) {
      xr[static_cast<std::size_t>(j)] = centroid[static_cast<std::size_t>(j)] +
          alpha * (centroid[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(worst)][static_cast<std::size_t>(j)]);
    }
    const double fr = f(xr);

    if (fr < fx[static_cast<std::size_t>(best)]) {
      for (int j = 0; j < n; ++j) {
        xe[static_cast<std::size_t>(j)] = centroid[static_cast<std::size_t>(j)] +
            gamma * (xr[static_cast<std::size_t>(j)] - centroid[static_cast<std::size_t>(j)]);
      }
      const double fe = f(xe);
      if (fe < fr) {
        x[static_cast<std::size_t>(worst)] = xe;
        fx[static_cast<std::size_t>(worst)] = fe;
      } else {
        x[static_cast<std::size_t>(worst)] = xr;
        fx[static_cast<std::size_t>(worst)] = fr;
      }
      continue;
    }

    if (fr < fx[static_cast<std::size_t>(second_worst)]) {
      x[static_cast<std::size_t>(worst)] = xr;
      fx[static_cast<std::size_t>(worst)] = fr;
      continue;
    }

    // Contraction, toward the better of worst/reflected.
    const bool outside = fr < fx[static_cast<std::size_t>(worst)];
    const std::vector<double>& toward = outside ? xr : x[static_cast<std::size_t>(worst)];
    for (int j = 0; j < n; ++j) {
      xc[static_cast<std::size_t>(j)] = centroid[static_cast<std::size_t>(j)] +
          rho * (toward[static_cast<std::size_t>(j)] - centroid[static_cast<std::size_t>(j)]);
    }
    const double fc = f(xc);
    if (fc < std::min(fr, fx[static_cast<std::size_t>(worst)])) {
      x[static_cast<std::size_t>(worst)] = xc;
      fx[static_cast<std::size_t>(worst)] = fc;
      continue;
    }

    // Shrink toward the best vertex.
    for (int i = 0; i <= n; ++i) {
      if (idx[static_cast<std::size_t>(i)] == best) continue;
      auto& xi = x[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      for (int j = 0; j < n; ++j) {
        xi[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(best)][static_cast<std::size_t>(j)] +
            sigma * (xi[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(best)][static_cast<std::size_t>(j)]);
      }
      fx[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = f(xi);
    }
  }

  const auto best_it = std::min_element(fx.begin(), fx.end());
  result.x = x[static_cast<std::size_t>(std::distance(fx.begin(), best_it))];
  result.value = *best_it;
  result.iterations = it;
  return result;
}

MultistartResult multistart_minimize(const Objective& f,
                                     const std::vector<std::vector<double>>& starts,
                                     const NelderMeadOptions& opts) {
  MultistartResult best;
  bool first = true;
  int index = 0;
  for (const std::vector<double>& start : starts) {
    NelderMeadResult r = nelder_mead(f, start, opts);
    best.total_iterations += r.iterations;
    if (first || r.value < best.value) {
      best.x = r.x;
      best.value = r.value;
      best.converged = r.converged;
      best.best_start = index;
      first = false;
    }
    ++index;
  }
  return best;
}

}  // namespace nlqc::optim
