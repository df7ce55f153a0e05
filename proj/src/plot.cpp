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

#include "sciconcept/plot.hpp"

#include <algorithm>
#include <sstream>

namespace sciconcept {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;

double X(double fraction) {
  return kLeft + fraction * (kWidth - kLeft - kRight);
}
double Y(double f1) { return kHeight - kBottom - f1 * (kHeight - kTop - kBottom); }

std::string P(double v) { return FormatFixed(v, 1); }

}  // namespace

std::string LearningCurveSvg(const ALExperiment& experiment) {
  static const char* kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << P(kWidth)
      << "\" height=\"" << P(kHeight) << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes and ticks.
  svg << "<line x1=\"" << P(X(0)) << "\" y1=\"" << P(Y(0)) << "\" x2=\""
      << P(X(1)) << "\" y2=\"" << P(Y(0)) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << P(X(0)) << "\" y1=\"" << P(Y(0)) << "\" x2=\""
      << P(X(0)) << "\" y2=\"" << P(Y(1)) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; i += 2) {
    const double t = i / 10.0;
    svg << "<text x=\"" << P(X(t)) << "\" y=\"" << P(Y(0) + 18)
        << "\" text-anchor=\"middle\">" << i * 10 << "%</text>\n";
    svg << "<text x=\"" << P(X(0) - 8) << "\" y=\"" << P(Y(t) + 4)
        << "\" text-anchor=\"end\">" << FormatFixed(t, 1) << "</text>\n";
  }
  svg << "<text x=\"" << P((X(0) + X(1)) / 2) << "\" y=\"" << P(kHeight - 10)
      << "\" text-anchor=\"middle\">training data</text>\n";
  svg << "<text x=\"15\" y=\"" << P((Y(0) + Y(1)) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << P((Y(0) + Y(1)) / 2) << ")\">test span F1</text>\n";

  // Full-data reference.
  svg << "<line x1=\"" << P(X(0)) << "\" y1=\"" << P(Y(experiment.full.mean))
      << "\" x2=\"" << P(X(1)) << "\" y2=\"" << P(Y(experiment.full.mean))
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

  int k = 0;
  for (const StrategyTrace& st : experiment.strategies) {
    const char* color = kColors[k % 4];
    std::string upper, lower, line;
    for (const BudgetSummary& b : st.budgets) {
      const double hi = std::min(1.0, b.test_f1.mean + b.test_f1.std);
      upper += P(X(b.fraction)) + "," + P(Y(hi)) + " ";
      line += P(X(b.fraction)) + "," + P(Y(b.test_f1.mean)) + " ";
    }
    for (auto it = st.budgets.rbegin(); it != st.budgets.rend(); ++it) {
      const double lo = std::max(0.0, it->test_f1.mean - it->test_f1.std);
      lower += P(X(it->fraction)) + "," + P(Y(lo)) + " ";
    }
    svg << "<polygon points=\"" << upper << lower << "\" fill=\"" << color
        << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    svg << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << P(X(0.75)) << "\" y=\"" << P(Y(0.25) + 16 * k)
        << "\" fill=\"" << color << "\">" << StrategyName(st.strategy)
        << "</text>\n";
    ++k;
  }
  svg << "<text x=\"" << P(X(0.75)) << "\" y=\"" << P(Y(0.25) + 16 * k)
      << "\" fill=\"gray\">full data</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sciconcept
