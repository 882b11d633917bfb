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

#include <span>
#include <utility>
#include <vector>

#include "qramsey/self_eraser.hpp"

namespace qramsey {

// Temporal Bell-type analysis of the self-eraser protocol. The dichotomic
// variable is chi = +1 for the upper level / one-photon branch and -1 for
// the lower level / vacuum branch, read at three times t1 < t2 < t3
// bracketing the quanton's M1 crossing and the erason's pass. With
// c1 = cos(theta1), s1 = sin(theta1):
//
//   K12 = c1^2 - s1^2,   K23 = c1^4 - s1^4,   K13 = 1 - 8 c1^2 s1^2,
//
// and the combinations Delta+- = K13 +- (K12 + K23) each obey the bound
// Delta >= -1 in any macrorealistic description of the two atoms.

struct Timeline {
  Timeline(double t1, double t2, double t3);

  double t1;  // quanton enters M1
  double t2;  // quanton has left M1
  double t3;  // erason has left M1
};

struct CorrelatorTriple {
  double k12;
  double k23;
  double k13;
};

CorrelatorTriple correlators_closed_form(double theta1);

// Delta+- = K13 +- (K12 + K23) evaluated through the closed forms:
// Delta+- = cos(4 theta1) +- 2 cos(2 theta1). Returned as (plus, minus).
std::pair<double, double> delta(double theta1);

inline constexpr double kBellBound = -1.0;
inline constexpr double kBellViolationTol = 1e-12;

struct BellPoint {
  double theta1;
  double delta_plus;
  double delta_minus;
  bool violates_plus;
  bool violates_minus;
};

struct BellScan {
  std::vector<BellPoint> points;
  double min_delta;
  double argmin_theta1;
};

// Evaluates delta on a theta1 grid. A point violates the bound when
// min(delta+, delta-) < -1 - kBellViolationTol. The default grid used by
// the CLI is 1024 uniform points on [0, pi] inclusive.
BellScan violation_scan(std::span<const double> theta1_grid);
std::vector<double> default_bell_grid();

// Protocol events at which the dichotomic variable can be read.
enum class ProtocolEvent {
  quanton_before_m1,  // t1
  quanton_after_m1,   // t2
  erason_before_m1,   // t3 - tau1: erason has crossed M2 and phase shifter
  erason_after_m1,    // t3
};

std::string_view to_string(ProtocolEvent e);

// Two-time correlator <chi_i chi_j> measured by sequential projective
// readouts inside the simulated protocol: branch on the outcome at the
// earlier event, propagate each branch, read the later event. Set
// flip_erason_sign to negate chi at the two erason events (the alternative
// readout convention). Requires event i to precede event j.
double measured_correlator(ProtocolEvent i, ProtocolEvent j,
                           const EraserConfig& config,
                           bool flip_erason_sign = false);

}  // namespace qramsey
