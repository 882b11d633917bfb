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

#include <numbers>
#include <variant>

#include "qramsey/dynamics.hpp"
#include "qramsey/fockspace.hpp"

namespace qramsey {

// Single-cavity Ramsey interferometer: the atom enters in |upper>, crosses
// the cavity (quantized beam splitter), acquires a dispersive phase phi on
// the upper path, and is closed by a classical mixing pulse (beam merger).
struct QoriConfig {
  FieldPreparation field_prep = FieldPreparation::vacuum();
  double theta = 0.0;                         // cavity pulse area
  PhaseShift phi{0.0};                        // upper-path phase
  double bm_mixing = std::numbers::pi / 4.0;  // beam-merger mixing angle
  FockCutoff cutoff{16};

  void validate() const;
};

struct DetectionProbabilities {
  double p_aa;  // atom found in the upper level
  double p_ab;  // atom found in the lower level
};

// Full interferometer pass. Pure preparations return the final pure state
// on atom x mode-1 x mode-2 (mode 2 stays in vacuum). A thermal preparation
// returns the joint atom x mode-1 density operator obtained by mixing the
// Fock components of the ensemble; its mode factor carries one extra guard
// rung (dimension n_max + 2) so every component clears the top-rung guard.
std::variant<PureState, DensityOperator> run_qori(const QoriConfig& config);

// Detector statistics computed two ways, closed form
//   p_aa = cb^2 <C^2> + sb^2 <S^2 a a^dag>
//          - 2 cb sb Re{ <S a C> exp(-i phi) },     cb = cos(bm_mixing),
// and Born rule on the run_qori output; the routes must agree within 1e-10
// (ContractError otherwise).
DetectionProbabilities detection_probabilities(const QoriConfig& config);

// Fringe contrast factor 2 <S a C> of the prepared field at pulse area
// theta. Vanishes identically for Fock and thermal preparations.
Complex contrast_factor(const FieldPreparation& prep, double theta,
                        FockCutoff cutoff);

// Field moments of the prepared mode that fix every detector statistic.
struct FieldMoments {
  double c2;       // <C^2>
  double s2aadag;  // <S^2 a a^dag>
  Complex sac;     // <S a C>
};

FieldMoments field_moments(const FieldPreparation& prep, double theta,
                           FockCutoff cutoff);

// Constant offset between the implemented fringe and the reference form
// p_aa = (1/2)(<C^2> + <S^2 a a^dag> + Re{2<S a C> exp(-i(phi + delta))}):
// with this library's pulse conventions delta = pi. Calibration tests pin it.
inline constexpr double kQoriFringeOffset = std::numbers::pi;

}  // namespace qramsey
