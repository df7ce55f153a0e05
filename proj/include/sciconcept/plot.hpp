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

#ifndef SCICONCEPT_PLOT_HPP_
#define SCICONCEPT_PLOT_HPP_

#include <string>

#include "sciconcept/active.hpp"

namespace sciconcept {

// SVG learning curve: mean test F1 per budget for each strategy with a
// +-1 std band over folds, and the full-data mean as a dashed line.
std::string LearningCurveSvg(const ALExperiment& experiment);

}  // namespace sciconcept

#endif  // SCICONCEPT_PLOT_HPP_
