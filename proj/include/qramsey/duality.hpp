// Copyright 2026 The qramsey Authors
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

#include <utility>

#include "qramsey/interferometer.hpp"

namespace qramsey {

// Wave-particle duality bookkeeping for the Ramsey interferometer. The two
// "ways" are the atomic levels between cavity and merger: w+ = <C^2> is the
// weight that stayed on the upper path, w- = <S^2 a a^dag> the weight that
// was deflected. Definitions:
//   predictability      P = |w+ - w-|
//   visibility          V = |2 <S a C>|          (fringe contrast)
//   quality             Q from (1 - P^2) Q^2 + P^2 + V^2 = 1
//   distinguishability  D = sqrt((1 - P^2) Q^2 + P^2)
// P, V, Q, D all lie in [0,1] and satisfy D^2 + V^2 = 1 for pure
// preparations.

struct DualityReport {
  double w_plus;
  double w_minus;
  double predictability;
  double visibility;
  double quality;
  double distinguishability;
  double identity_residual;  // (1-P^2)Q^2 + P^2 + V^2 - 1
  bool degenerate;           // P within 1e-9 of 1; Q reported as 0, D as 1
};

inline constexpr double kDegeneratePredictabilityTol = 1e-9;

// Path weights (w+, w-). Any preparation kind.
std::pair<double, double> way_probabilities(const QoriConfig& config);

double predictability(const QoriConfig& config);

// Pure preparations only; thermal is rejected with ConfigError.
double visibility(const QoriConfig& config);

// (Q, D) by inversion of the duality identity. Pure preparations only.
// In the degenerate P -> 1 limit the identity carries no information about
// Q; the pair (0, 1) is returned and flagged in duality_report.
std::pair<double, double> quality_and_distinguishability(
    const QoriConfig& config);

// (1-P^2) Q^2 + P^2 + V^2 - 1, which collapses to P^2 + V^2 - 1 in the
// degenerate case. Stays below 1e-9 in magnitude for admissible configs.
double duality_residual(const QoriConfig& config);

DualityReport duality_report(const QoriConfig& config);

}  // namespace qramsey
