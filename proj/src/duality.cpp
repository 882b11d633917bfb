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

#include "qramsey/duality.hpp"

#include <cmath>

namespace qramsey {

namespace {

void require_pure(const QoriConfig& config, std::string_view op) {
  if (!config.field_prep.is_pure()) {
    throw ConfigError(std::string(op) +
                      " is defined for pure field preparations only");
  }
}

}  // namespace

std::pair<double, double> way_probabilities(const QoriConfig& config) {
  config.validate();
  const FieldMoments m =
      field_moments(config.field_prep, config.theta, config.cutoff);
  return {clamp_probability(m.c2), clamp_probability(m.s2aadag)};
}

double predictability(const QoriConfig& config) {
  const auto [w_plus, w_minus] = way_probabilities(config);
  return std::abs(w_plus - w_minus);
}

double visibility(const QoriConfig& config) {
  require_pure(config, "visibility");
  config.validate();
  return std::abs(
      contrast_factor(config.field_prep, config.theta, config.cutoff));
}

std::pair<double, double> quality_and_distinguishability(
    const QoriConfig& config) {
  const DualityReport r = duality_report(config);
  return {r.quality, r.distinguishability};
}

double duality_residual(const QoriConfig& config) {
  return duality_report(config).identity_residual;
}

DualityReport duality_report(const QoriConfig& config) {
  require_pure(config, "duality analysis");
  config.validate();

  DualityReport r{};
  const auto [w_plus, w_minus] = way_probabilities(config);
  r.w_plus = w_plus;
  r.w_minus = w_minus;
  r.predictability = std::abs(w_plus - w_minus);
  r.visibility = visibility(config);

  const double p2 = r.predictability * r.predictability;
  const double v2 = r.visibility * r.visibility;
  r.degenerate = r.predictability >= 1.0 - kDegeneratePredictabilityTol;
  if (r.degenerate) {
    // The identity fixes (1 - P^2) Q^2, which carries no information about
    // Q as P -> 1. Report the convention Q = 0, D = 1.
    r.quality = 0.0;
    r.distinguishability = 1.0;
    r.identity_residual = p2 + v2 - 1.0;
    return r;
  }

  const double q2 = clamp_probability((1.0 - p2 - v2) / (1.0 - p2));
  r.quality = std::sqrt(q2);
  r.distinguishability = std::sqrt((1.0 - p2) * q2 + p2);
  r.identity_residual = (1.0 - p2) * q2 + p2 + v2 - 1.0;
  return r;
}

}  // namespace qramsey
