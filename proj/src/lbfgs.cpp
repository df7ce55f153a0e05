// Copyright 2026 The SciConcept Authors.
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

#include "sciconcept/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "sciconcept/error.hpp"

namespace sciconcept {

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

void CheckFinite(double f, std::span<const double> g, int iteration) {
  bool ok = std::isfinite(f);
  for (double v : g) ok = ok && std::isfinite(v);
  if (!ok) {
    throw NumericalError("non-finite objective or gradient at iteration " +
                         std::to_string(iteration) + " (f = " +
                         std::to_string(f) + ")");
  }
}

struct Correction {
  std::vector<double> s;
  std::vector<double> y;
  double rho = 0.0;
};

}  // namespace

LbfgsResult MinimizeLbfgs(const Objective& objective, std::span<double> x,
                          const LbfgsOptions& options,
                          const IterationCallback& callback) {
  const std::size_t n = x.size();
  std::vector<double> g(n);
  double f = objective(x, g);
  CheckFinite(f, g, 0);

  LbfgsResult result;
  result.value = f;
  result.gradient_norm = Norm(g);

  std::deque<Correction> history;
  std::vector<double> d(n);
  std::vector<double> x_new(n);
  std::vector<double> g_new(n);
  std::vector<double> alpha(options.memory);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    if (result.gradient_norm <= options.tolerance * std::max(1.0, Norm(x))) {
      result.status = LbfgsStatus::kConverged;
      return result;
    }

    // Two-loop recursion: d = -H g.
    for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
    for (int k = static_cast<int>(history.size()) - 1; k >= 0; --k) {
      alpha[k] = history[k].rho * Dot(history[k].s, d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * history[k].y[i];
    }
    double step = 1.0;
    if (!history.empty()) {
      const Correction& last = history.back();
      const double gamma = Dot(last.s, last.y) / Dot(last.y, last.y);
      for (double& v : d) v *= gamma;
    } else {
      step = 1.0 / std::max(1.0, result.gradient_norm);
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      const double beta = history[k].rho * Dot(history[k].y, d);
      for (std::size_t i = 0; i < n; ++i) {
        d[i] += history[k].s[i] * (alpha[k] - beta);
      }
    }

    double slope = Dot(g, d);
    if (slope >= 0.0) {
      // Not a descent direction; restart from steepest descent.
      history.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = Dot(g, d);
      step = 1.0 / std::max(1.0, result.gradient_norm);
    }

    bool accepted = false;
    double f_new = f;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      f_new = objective(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= f + options.armijo * step * slope &&
          f_new < f) {
        accepted = true;
        break;
      }
      step *= options.backtrack;
    }
    if (!accepted) {
      result.status = LbfgsStatus::kLineSearchFailed;
      return result;
    }
    CheckFinite(f_new, g_new, iter);

    Correction c;
    c.s.resize(n);
    c.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      c.s[i] = x_new[i] - x[i];
      c.y[i] = g_new[i] - g[i];
    }
    const double sy = Dot(c.s, c.y);
    if (sy > 1e-12 * Norm(c.s) * Norm(c.y)) {
      c.rho = 1.0 / sy;
      history.push_back(std::move(c));
      if (static_cast<int>(history.size()) > options.memory) {
        history.pop_front();
      }
    }

    std::copy(x_new.begin(), x_new.end(), x.begin());
    g.swap(g_new);
    f = f_new;
    result.iterations = iter;
    result.value = f;
    result.gradient_norm = Norm(g);
    if (callback && !callback(iter, x, f, result.gradient_norm)) {
      result.status = LbfgsStatus::kStoppedByCallback;
      return result;
    }
  }
  result.status =
      result.gradient_norm <= options.tolerance * std::max(1.0, Norm(x))
          ? LbfgsStatus::kConverged
          : LbfgsStatus::kMaxIterations;
  return result;
}

}  // namespace sciconcept
