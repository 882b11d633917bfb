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

#include "qramsey/self_eraser.hpp"

#include <cmath>
#include <numbers>

namespace qramsey {

namespace {

constexpr double kRouteTol = 1e-10;
constexpr double kPiPulse = std::numbers::pi / 2.0;  // theta for M2

double upper_population(const PureState& state) {
  const int nn = state.cutoff().states_per_mode() *
                 state.cutoff().states_per_mode();
  return state.amplitudes().head(nn).squaredNorm();
}

}  // namespace

std::string_view to_string(ErasonPath path) {
  return path == ErasonPath::both_cavities ? "both" : "m2_only";
}

void EraserConfig::validate() const {
  if (!std::isfinite(s1) || s1 < 0.0 || s1 > 1.0) {
    throw ConfigError("beam-splitter amplitude s1 must lie in [0, 1]");
  }
}

double EraserConfig::c1() const { return std::sqrt(1.0 - s1 * s1); }

double EraserConfig::theta1() const { return std::asin(s1); }

PureState prepare_nonlocal(const EraserConfig& config) {
  config.validate();
  PureState state = PureState::basis(AtomLevel::upper, 0, 0, config.cutoff);
  state = jc_apply(state, CavityMode::m1, config.theta1());
  state = phase_shifter(state, config.phi);
  return jc_apply(state, CavityMode::m2, kPiPulse);
}

PureState erason_passage(const PureState& after_quanton,
                         const EraserConfig& config) {
  config.validate();
  const double upper_pop = upper_population(after_quanton);
  if (upper_pop > 1e-12) {
    throw ContractError(
        "erason passage requires the quanton to have exited in the lower "
        "level; found upper population " +
        format_g17(upper_pop));
  }
  PureState state = jc_apply(after_quanton, CavityMode::m2, kPiPulse);
  state = phase_shifter(state, config.phi);
  if (config.path == ErasonPath::both_cavities) {
    state = jc_apply(state, CavityMode::m1, config.theta1());
  }
  return state;
}

ErasonProbabilities erason_probabilities(const EraserConfig& config) {
  config.validate();
  const double c2 = config.c1() * config.c1();
  const double s2 = config.s1 * config.s1;

  double closed_ge = 0.0;
  double closed_gg = 0.0;
  if (config.path == ErasonPath::both_cavities) {
    const double cos2phi = std::cos(2.0 * config.phi.value());
    closed_ge = c2 * c2 + s2 * s2 + 2.0 * c2 * s2 * cos2phi;
    closed_gg = 2.0 * c2 * s2 * (1.0 - cos2phi);
  } else {
    closed_ge = c2;
    closed_gg = s2;
  }

  const PureState after = erason_passage(prepare_nonlocal(config), config);
  const double born_ge = upper_population(after);
  const double born_gg = 1.0 - born_ge;

  if (std::abs(closed_ge - born_ge) > kRouteTol ||
      std::abs(closed_gg - born_gg) > kRouteTol) {
    throw ContractError("erasure statistics routes disagree: closed form (" +
                        format_g17(closed_ge) + ", " + format_g17(closed_gg) +
                        ") vs Born rule (" + format_g17(born_ge) + ", " +
                        format_g17(born_gg) + ")");
  }
  return ErasonProbabilities{clamp_probability(closed_ge),
                             clamp_probability(closed_gg)};
}

double erasure_visibility(double s1) {
  if (!std::isfinite(s1) || s1 < 0.0 || s1 > 1.0) {
    throw ConfigError("beam-splitter amplitude s1 must lie in [0, 1]");
  }
  const double s2 = s1 * s1;
  const double c2 = 1.0 - s2;
  // The fringe mean c2^2 + s2^2 is bounded below by 1/2.
  return 2.0 * c2 * s2 / (c2 * c2 + s2 * s2);
}

VelocityMatch matching_velocity(double omega, double L1, int k) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("Rabi frequency must be positive and finite");
  }
  if (!(L1 > 0.0) || !std::isfinite(L1)) {
    throw ConfigError("cavity length must be positive and finite");
  }
  if (k < 0) {
    throw ConfigError("branch index k must be nonnegative");
  }
  const double order = 2.0 * k + 1.0;
  VelocityMatch match{};
  match.v = 4.0 * omega * L1 / (order * std::numbers::pi);
  match.theta1 = order * std::numbers::pi / 4.0;
  return match;
}

std::vector<FringePoint> fringe_scan(const EraserConfig& config,
                                     std::span<const double> phi_grid) {
  config.validate();
  std::vector<FringePoint> points;
  points.reserve(phi_grid.size());
  for (const double phi : phi_grid) {
    EraserConfig point = config;
    point.phi = PhaseShift(phi);
    const ErasonProbabilities p = erason_probabilities(point);
    points.push_back(FringePoint{phi, p.p_ge, p.p_gg});
  }
  return points;
}

ProtocolTrace run_protocol(const EraserConfig& config) {
  config.validate();
  PureState after_quanton = prepare_nonlocal(config);
  PureState after_erason = erason_passage(after_quanton, config);
  const ErasonProbabilities p = erason_probabilities(config);
  return ProtocolTrace{std::move(after_quanton), std::move(after_erason), p};
}

}  // namespace qramsey
