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

// Limited-memory BFGS with a backtracking Armijo line search. Every accepted
// step strictly decreases the objective.

#ifndef SCICONCEPT_LBFGS_HPP_
#define SCICONCEPT_LBFGS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace sciconcept {

struct LbfgsOptions {
  int memory = 10;
  int max_iterations = 300;
  // Stop when |g| <= tolerance * max(1, |x|).
  double tolerance = 1e-5;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_line_search = 40;
};

enum class LbfgsStatus {
  kConverged,
  kMaxIterations,
  kLineSearchFailed,
  kStoppedByCallback,
};

struct LbfgsResult {
  LbfgsStatus status = LbfgsStatus::kMaxIterations;
  int iterations = 0;
  double value = 0.0;
  double gradient_norm = 0.0;
};

// Returns f(x) and writes the gradient into the second argument.
using Objective = std::function<double(std::span<const double>,
                                       std::span<double>)>;

// Called after every accepted step with (iteration, x, f(x), |g|). Returning
// false stops the optimisation.
using IterationCallback =
    std::function<bool(int, std::span<const double>, double, double)>;

// Minimises in place. Throws NumericalError if f or g becomes NaN/Inf.
LbfgsResult MinimizeLbfgs(const Objective& objective, std::span<double> x,
                          const LbfgsOptions& options,
                          const IterationCallback& callback = {});

}  // namespace sciconcept

#endif  // SCICONCEPT_LBFGS_HPP_
