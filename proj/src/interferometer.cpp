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

#include "qramsey/interferometer.hpp"

#include <cmath>

namespace qramsey {

namespace {

// Agreement tolerance between the closed-form and Born-rule routes.
constexpr double kRouteTol = 1e-10;

PureState run_pure_pipeline(const FieldPreparation& prep, double theta,
                            PhaseShift phi, double bm_mixing,
                            FockCutoff cutoff) {
  PureState state =
      make_state(AtomLevel::upper, prep, FieldPreparation::vacuum(), cutoff);
  state = jc_apply(state, CavityMode::m1, theta);
  state = phase_shifter(state, phi);
  return classical_pulse(state, bm_mixing, 0.0);
}

double upper_population(const PureState& state) {
  const int nn = state.cutoff().states_per_mode() *
                 state.cutoff().states_per_mode();
  return state.amplitudes().head(nn).squaredNorm();
}

}  // namespace

void QoriConfig::validate() const {
  if (!std::isfinite(theta)) {
    throw ConfigError("pulse area must be finite");
  }
  if (!std::isfinite(bm_mixing)) {
    throw ConfigError("beam-merger mixing angle must be finite");
  }
  field_prep.require_admissible(cutoff);
}

FieldMoments field_moments(const FieldPreparation& prep, double theta,
                           FockCutoff cutoff) {
  const ScDiagonals d = sc_diagonals(theta, cutoff);
  const int n = cutoff.states_per_mode();
  FieldMoments m{0.0, 0.0, Complex(0.0, 0.0)};

  if (prep.is_pure()) {
    const Eigen::VectorXcd amp = prep.mode_amplitudes(cutoff);
    for (int k = 0; k < n; ++k) {
      const double w = std::norm(amp(k));
      m.c2 += w * d.c(k) * d.c(k);
      const double sk = d.s(k) * std::sqrt(static_cast<double>(k + 1));
      m.s2aadag += w * sk * sk;
    }
    // <k| S a C |k+1> = sin(theta sqrt(k+1)) cos(theta sqrt(k+2))
    for (int k = 0; k + 1 < n; ++k) {
      const double sk = d.s(k) * std::sqrt(static_cast<double>(k + 1));
      m.sac += std::conj(amp(k)) * amp(k + 1) * sk * d.c(k + 1);
    }
    return m;
  }

  const Eigen::VectorXd w = prep.mode_weights(cutoff);
  for (int k = 0; k < n; ++k) {
    m.c2 += w(k) * d.c(k) * d.c(k);
    const double sk = d.s(k) * std::sqrt(static_cast<double>(k + 1));
    m.s2aadag += w(k) * sk * sk;
  }
  // A diagonal ensemble has no number coherence, so <S a C> vanishes.
  return m;
}

Complex contrast_factor(const FieldPreparation& prep, double theta,
                        FockCutoff cutoff) {
  return 2.0 * field_moments(prep, theta, cutoff).sac;
}

std::variant<PureState, DensityOperator> run_qori(const QoriConfig& config) {
  config.validate();
  if (config.field_prep.is_pure()) {
    return run_pure_pipeline(config.field_prep, config.theta, config.phi,
                             config.bm_mixing, config.cutoff);
  }

  // Thermal ensemble: run each Fock component through the pure pipeline at
  // a cutoff with one guard rung (so the highest retained component clears
  // the top-rung guard) and mix the reduced atom x mode-1 operators.
  const FockCutoff ext(config.cutoff.n_max() + 1);
  const Eigen::VectorXd weights = config.field_prep.mode_weights(config.cutoff);
  const int dim = subsystem_dim(Subsystem::atom_mode1, ext);
  Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < weights.size(); ++k) {
    if (weights(k) == 0.0) {
      continue;
    }
    const PureState component =
        run_pure_pipeline(FieldPreparation::fock(k), config.theta, config.phi,
                          config.bm_mixing, ext);
    mixed += weights(k) *
             partial_trace(component, Subsystem::atom_mode1).matrix();
  }
  return DensityOperator(std::move(mixed), Subsystem::atom_mode1, ext);
}

DetectionProbabilities detection_probabilities(const QoriConfig& config) {
  config.validate();
  const FieldMoments m =
      field_moments(config.field_prep, config.theta, config.cutoff);
  const double cb = std::cos(config.bm_mixing);
  const double sb = std::sin(config.bm_mixing);
  const double interference =
      2.0 * cb * sb *
      (m.sac * std::exp(Complex(0.0, -config.phi.value()))).real();
  const double closed_aa = cb * cb * m.c2 + sb * sb * m.s2aadag - interference;
  const double closed_ab = sb * sb * m.c2 + cb * cb * m.s2aadag + interference;

  double born_aa = 0.0;
  const auto final_state = run_qori(config);
  if (std::holds_alternative<PureState>(final_state)) {
    born_aa = upper_population(std::get<PureState>(final_state));
  } else {
    const auto& rho = std::get<DensityOperator>(final_state);
    born_aa = 0.5 * (1.0 + expectation(rho, "sigma_z"));
  }

  if (std::abs(closed_aa - born_aa) > kRouteTol) {
    throw ContractError(
        "detection probability routes disagree: closed form " +
        format_g17(closed_aa) + " vs Born rule " + format_g17(born_aa));
  }
  return DetectionProbabilities{clamp_probability(closed_aa),
                                clamp_probability(closed_ab)};
}

}  // namespace qramsey
