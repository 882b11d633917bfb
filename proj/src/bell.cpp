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

#include "qramsey/bell.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qramsey {

namespace {

constexpr double kPiPulse = std::numbers::pi / 2.0;

struct Branch {
  double probability;
  double chi;
  PureState state;
};

double upper_population(const PureState& state) {
  const int nn = state.cutoff().states_per_mode() *
                 state.cutoff().states_per_mode();
  return state.amplitudes().head(nn).squaredNorm();
}

// Advances the protocol state from one event to the next. The atom register
// carries the quanton up to quanton_after_m1 and the erason afterwards; the
// handoff is implicit because the quanton exits in the lower level, which is
// exactly the erason's entry level.
PureState advance(const PureState& state, ProtocolEvent from,
                  ProtocolEvent to, const EraserConfig& config) {
  PureState current = state;
  int stage = static_cast<int>(from);
  const int target = static_cast<int>(to);
  while (stage < target) {
    switch (static_cast<ProtocolEvent>(stage)) {
      case ProtocolEvent::quanton_before_m1:
        current = jc_apply(current, CavityMode::m1, config.theta1());
        break;
      case ProtocolEvent::quanton_after_m1:
        // Quanton completes its pass: phase shifter, then the M2 pi pulse.
        // The erason then enters in the lower level and crosses M2 and the
        // phase shifter, reaching the readout point before M1.
        current = phase_shifter(current, config.phi);
        current = jc_apply(current, CavityMode::m2, kPiPulse);
        current = jc_apply(current, CavityMode::m2, kPiPulse);
        current = phase_shifter(current, config.phi);
        break;
      case ProtocolEvent::erason_before_m1:
        current = jc_apply(current, CavityMode::m1, config.theta1());
        break;
      case ProtocolEvent::erason_after_m1:
        break;
    }
    ++stage;
  }
  return current;
}

// Projective readout of the atomic level: splits the state into the chi=+1
// (upper) and chi=-1 (lower) branches.
std::vector<Branch> project_level(const PureState& state) {
  const FockCutoff cutoff = state.cutoff();
  const int nn = cutoff.states_per_mode() * cutoff.states_per_mode();
  std::vector<Branch> branches;
  const double p_upper = upper_population(state);

  if (p_upper > 1e-15) {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
    amp.head(nn) = state.amplitudes().head(nn) / std::sqrt(p_upper);
    branches.push_back(
        Branch{p_upper, +1.0, PureState(std::move(amp), cutoff)});
  }
  const double p_lower = 1.0 - p_upper;
  if (p_lower > 1e-15) {
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
    amp.tail(nn) = state.amplitudes().tail(nn) / std::sqrt(p_lower);
    branches.push_back(
        Branch{p_lower, -1.0, PureState(std::move(amp), cutoff)});
  }
  return branches;
}

bool is_erason_event(ProtocolEvent e) {
  return e == ProtocolEvent::erason_before_m1 ||
         e == ProtocolEvent::erason_after_m1;
}

}  // namespace

std::string_view to_string(ProtocolEvent e) {
  switch (e) {
    case ProtocolEvent::quanton_before_m1:
      return "quanton_before_m1";
    case ProtocolEvent::quanton_after_m1:
      return "quanton_after_m1";
    case ProtocolEvent::erason_before_m1:
      return "erason_before_m1";
    case ProtocolEvent::erason_after_m1:
      return "erason_after_m1";
  }
  return "?";
}

Timeline::Timeline(double t1_in, double t2_in, double t3_in)
    : t1(t1_in), t2(t2_in), t3(t3_in) {
  if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(t3)) {
    throw ConfigError("timeline instants must be finite");
  }
  if (!(t1 < t2 && t2 < t3)) {
    throw ConfigError("timeline requires t1 < t2 < t3");
  }
}

CorrelatorTriple correlators_closed_form(double theta1) {
  if (!std::isfinite(theta1)) {
    throw ConfigError("pulse area must be finite");
  }
  const double c = std::cos(theta1);
  const double s = std::sin(theta1);
  const double c2 = c * c;
  const double s2 = s * s;
  CorrelatorTriple k{};
  k.k12 = c2 - s2;
  k.k23 = c2 * c2 - s2 * s2;
  k.k13 = 1.0 - 8.0 * c2 * s2;
  return k;
}

std::pair<double, double> delta(double theta1) {
  const CorrelatorTriple k = correlators_closed_form(theta1);
  return {k.k13 + (k.k12 + k.k23), k.k13 - (k.k12 + k.k23)};
}

std::vector<double> default_bell_grid() {
  constexpr int kPoints = 1024;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    grid[i] = std::numbers::pi * i / (kPoints - 1);
  }
  return grid;
}

BellScan violation_scan(std::span<const double> theta1_grid) {
  if (theta1_grid.empty()) {
    throw ConfigError("violation scan requires a nonempty grid");
  }
  BellScan scan;
  scan.points.reserve(theta1_grid.size());
  scan.min_delta = std::numeric_limits<double>::infinity();
  scan.argmin_theta1 = theta1_grid.front();
  for (const double theta1 : theta1_grid) {
    const auto [plus, minus] = delta(theta1);
    BellPoint point{};
    point.theta1 = theta1;
    point.delta_plus = plus;
    point.delta_minus = minus;
    point.violates_plus = plus < kBellBound - kBellViolationTol;
    point.violates_minus = minus < kBellBound - kBellViolationTol;
    scan.points.push_back(point);
    const double local = std::min(plus, minus);
    if (local < scan.min_delta) {
      scan.min_delta = local;
      scan.argmin_theta1 = theta1;
    }
  }
  return scan;
}

double measured_correlator(ProtocolEvent i, ProtocolEvent j,
                           const EraserConfig& config, bool flip_erason_sign) {
  config.validate();
  if (static_cast<int>(i) >= static_cast<int>(j)) {
    throw ConfigError("measured correlator requires event i before event j");
  }

  const double sign_i = flip_erason_sign && is_erason_event(i) ? -1.0 : 1.0;
  const double sign_j = flip_erason_sign && is_erason_event(j) ? -1.0 : 1.0;

  const PureState initial =
      PureState::basis(AtomLevel::upper, 0, 0, config.cutoff);
  const PureState at_i =
      advance(initial, ProtocolEvent::quanton_before_m1, i, config);

  double correlator = 0.0;
  for (const Branch& branch : project_level(at_i)) {
    const PureState at_j = advance(branch.state, i, j, config);
    const double mean_chi = 2.0 * upper_population(at_j) - 1.0;
    correlator += branch.probability * (sign_i * branch.chi) *
                  (sign_j * mean_chi);
  }
  return correlator;
}

}  // namespace qramsey
