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

#include <Eigen/Dense>

#include "qramsey/fockspace.hpp"

namespace qramsey {

// Phase conventions used by every primitive in this library
// ----------------------------------------------------------
// Resonant cavity coupling: U = exp(-i theta (a sigma+ + a^dag sigma-)),
// theta = Omega * tau, acting on the addressed mode only:
//
//   |upper, n>  ->  cos(theta sqrt(n+1)) |upper, n>
//                   - i sin(theta sqrt(n+1)) |lower, n+1>
//   |lower, n>  ->  cos(theta sqrt(n))   |lower, n>
//                   - i sin(theta sqrt(n))   |upper, n-1>
//
// so a single passage of an upper-level atom through a mode in state |chi>
// yields  |upper> C|chi> - i |lower> a^dag S|chi>  with the diagonal kernels
//   C |n> = cos(theta sqrt(n+1)) |n>,
//   S |n> = [sin(theta sqrt(n+1)) / sqrt(n+1)] |n>.
//
// Phase shifter: multiplies every |upper, n1, n2> amplitude by exp(-i phi);
// lower-level amplitudes are untouched.
//
// Classical pulse: U(theta_m, phi_p) maps
//   |upper> -> cos(theta_m)|upper> - i exp(-i phi_p) sin(theta_m)|lower>
//   |lower> -> -i exp(+i phi_p) sin(theta_m)|upper> + cos(theta_m)|lower>
//
// These choices fix every interference pattern up to a constant phase
// offset per pipeline. The offsets are measured by calibration tests and
// reported as gauge constants in CLI metadata; all visibilities, way
// probabilities and correlators are gauge independent.

// Fundamental pair (Rabi frequency, interaction time); only the product
// theta = omega * tau enters the dynamics.
struct InteractionParams {
  InteractionParams(double omega, double tau);

  double omega;  // vacuum Rabi frequency, rad/s, > 0
  double tau;    // interaction time, s, >= 0

  double theta() const { return omega * tau; }
};

// Dispersive phase. Stored raw; reduced() folds into [0, 2pi) for reports.
class PhaseShift {
 public:
  explicit PhaseShift(double phi);

  double value() const { return phi_; }
  double reduced() const;

 private:
  double phi_;
};

// Diagonal kernels of the single-passage map at a given theta:
// c[n] = cos(theta sqrt(n+1)), s[n] = sin(theta sqrt(n+1)) / sqrt(n+1),
// n = 0..n_max.
struct ScDiagonals {
  Eigen::VectorXd c;
  Eigen::VectorXd s;
};

ScDiagonals sc_diagonals(double theta, FockCutoff cutoff);

enum class CavityMode { m1 = 1, m2 = 2 };

// Exact truncated-space cavity passage. Throws CutoffOverflowError when the
// population of |upper, n_max> on the addressed mode exceeds kTopRungTol,
// because that amplitude would couple past the cutoff.
PureState jc_apply(const PureState& state, CavityMode mode, double theta);

// Brute-force reference for jc_apply: assembles the coupling generator
// G = a sigma+ + a^dag sigma- on a space with one extra guard rung,
// exponentiates it by eigendecomposition and projects back. Slow by design;
// used to certify the closed-form path.
PureState jc_oracle(const PureState& state, CavityMode mode, double theta);

PureState classical_pulse(const PureState& state, double mixing_theta,
                          double pulse_phase);

PureState phase_shifter(const PureState& state, PhaseShift phi);

}  // namespace qramsey
