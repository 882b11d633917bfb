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
#include <vector>

#include "qramsey/dynamics.hpp"
#include "qramsey/fockspace.hpp"

namespace qramsey {

// Two-cavity self-eraser protocol. A first atom (the quanton) enters in
// |upper> with both cavities in vacuum, crosses M1 with pulse area theta1
// (sin theta1 = s1), acquires phase phi on the upper path, then crosses M2
// tuned to a full pi pulse for the one-photon manifold (theta2 = pi/2). The
// quanton exits in |lower> with certainty and leaves one photon shared
// non-locally between the cavities:
//
//   -i [ s1 |1,0> + c1 exp(-i phi) |0,1> ] (x) |lower>.
//
// A second atom (the erason) enters in |lower>, ready to absorb, and
// retraces the path in reverse: M2 (pi pulse), phase shifter, then
// optionally M1 (same theta1). Reading the erason's level erases or reveals
// the stored way information.

enum class ErasonPath {
  both_cavities,  // M2, phase shifter, M1: full erasure pass
  m2_only,        // stop before M1: way information is read out instead
};

std::string_view to_string(ErasonPath path);

struct EraserConfig {
  double s1 = 0.0;  // sin(theta1), in [0, 1]
  PhaseShift phi{0.0};
  ErasonPath path = ErasonPath::both_cavities;
  FockCutoff cutoff{16};

  void validate() const;

  double c1() const;      // cos(theta1) = sqrt(1 - s1^2)
  double theta1() const;  // asin(s1)
};

// Joint detection statistics for quanton (always g = lower) and erason.
// For both_cavities these are the joint probabilities (g,e) and (g,g); for
// m2_only they are the erason's way readout P(e) = c1^2, P(g) = s1^2.
struct ErasonProbabilities {
  double p_ge;
  double p_gg;
};

// Quanton passage from |upper>|0,0>: returns the entangled one-photon field
// state (atom factor in |lower>). The returned state lives at the config
// cutoff; the physics occupies the {0,1} photon manifold exactly, so results
// are cutoff independent.
PureState prepare_nonlocal(const EraserConfig& config);

// Reversed erason passage applied to a prepared one-photon state. The atom
// register is reused: the function requires the atom factor of
// `after_quanton` to be |lower> (as the quanton left it, within 1e-12) and
// reads it as the erason's initial lower level from then on.
PureState erason_passage(const PureState& after_quanton,
                         const EraserConfig& config);

// Joint probabilities computed two ways, closed form
//   p_ge = c1^4 + s1^4 + 2 c1^2 s1^2 cos(2 phi)     (both_cavities)
//   p_gg = 2 c1^2 s1^2 (1 - cos(2 phi))
// and Born rule on the simulated pipeline; routes must agree within 1e-10.
ErasonProbabilities erason_probabilities(const EraserConfig& config);

// Contrast of the p_ge fringe in phi: 2 c1^2 s1^2 / (c1^4 + s1^4).
double erasure_visibility(double s1);

// Atomic velocity that realizes theta1 = (2k+1) pi / 4 on a cavity of
// length L1: v = 4 Omega L1 / ((2k+1) pi). k >= 0.
struct VelocityMatch {
  double v;
  double theta1;
};

VelocityMatch matching_velocity(double omega, double L1, int k);

struct FringePoint {
  double phi;
  double p_ge;
  double p_gg;
};

// Evaluates erason_probabilities across a phi grid with the rest of the
// config held fixed.
std::vector<FringePoint> fringe_scan(const EraserConfig& config,
                                     std::span<const double> phi_grid);

struct ProtocolTrace {
  PureState after_quanton;
  PureState after_erason;
  ErasonProbabilities probabilities;
};

// Full protocol pass: prepare_nonlocal, erason_passage, statistics.
ProtocolTrace run_protocol(const EraserConfig& config);

// Constant phase offset of the implemented p_ge fringe against the closed
// form above: zero in this library's conventions. Pinned by a calibration
// test and reported in CLI metadata.
inline constexpr double kErasureFringeOffset = 0.0;

}  // namespace qramsey
