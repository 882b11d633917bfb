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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "oracles.hpp"
#include "qramsey/interferometer.hpp"

using namespace qramsey;
using qramsey::testing::fit_harmonic;
using qramsey::testing::fourier_grid;
using qramsey::testing::ramsey_final_state;
using qramsey::testing::uniform01;
using qramsey::testing::wrap_angle;

namespace {

std::vector<double> fringe_samples(QoriConfig config,
                                   const std::vector<double>& grid) {
  std::vector<double> p;
  p.reserve(grid.size());
  for (const double phi : grid) {
    config.phi = PhaseShift(phi);
    p.push_back(detection_probabilities(config).p_aa);
  }
  return p;
}

}  // namespace

TEST_CASE("configuration validation") {
  QoriConfig config;
  config.theta = 0.8;
  CHECK_NOTHROW(config.validate());

  config.field_prep = FieldPreparation::fock(20);
  config.cutoff = FockCutoff(16);
  CHECK_THROWS_AS(config.validate(), ConfigError);

  config.field_prep = FieldPreparation::coherent(Complex(2.0, 0.0));
  config.cutoff = FockCutoff(8);
  CHECK_THROWS_AS(config.validate(), ConfigError);

  config.cutoff = FockCutoff(24);
  CHECK_NOTHROW(config.validate());

  config.theta = std::nan("");
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("pipeline state matches the hand-derived final state") {
  const FockCutoff c(16);
  const double theta = 1.1;
  const double phi = 0.6;

  SUBCASE("number state preparation") {
    QoriConfig config;
    config.field_prep = FieldPreparation::fock(3);
    config.theta = theta;
    config.phi = PhaseShift(phi);
    config.cutoff = c;
    const PureState out = std::get<PureState>(run_qori(config));

    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(c.states_per_mode());
    chi(3) = 1.0;
    const PureState reference = ramsey_final_state(chi, theta, phi, c);
    CHECK((out.amplitudes() - reference.amplitudes()).cwiseAbs().maxCoeff() <
          1e-14);
  }

  SUBCASE("coherent preparation") {
    const FieldPreparation prep =
        FieldPreparation::coherent(Complex(0.5, 0.0));
    QoriConfig config;
    config.field_prep = prep;
    config.theta = theta;
    config.phi = PhaseShift(phi);
    config.cutoff = c;
    const PureState out = std::get<PureState>(run_qori(config));
    const PureState reference =
        ramsey_final_state(prep.mode_amplitudes(c), theta, phi, c);
    CHECK((out.amplitudes() - reference.amplitudes()).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("field moments close the resolution identity") {
  const FockCutoff c(16);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    const FieldPreparation prep =
        trial % 3 == 0
            ? FieldPreparation::vacuum()
            : (trial % 3 == 1
                   ? FieldPreparation::fock(trial % 7)
                   : FieldPreparation::coherent(
                         Complex(uniform01(rng), uniform01(rng))));
    const FieldMoments m = field_moments(prep, theta, c);
    CHECK(m.c2 + m.s2aadag == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Fock landmarks: both weights ride the (n+1)-photon Rabi angle
  const FieldMoments fock2 = field_moments(FieldPreparation::fock(2), 0.9, c);
  const double angle = 0.9 * std::sqrt(3.0);
  CHECK(fock2.c2 == doctest::Approx(std::cos(angle) * std::cos(angle))
                        .epsilon(1e-14));
  CHECK(fock2.s2aadag == doctest::Approx(std::sin(angle) * std::sin(angle))
                             .epsilon(1e-14));
  CHECK(std::abs(fock2.sac) == 0.0);

  // thermal moments are the weighted Fock moments
  const FieldPreparation th = FieldPreparation::thermal(0.25);
  const FieldMoments mth = field_moments(th, 0.9, c);
  const Eigen::VectorXd w = th.mode_weights(c);
  double c2 = 0.0;
  for (int n = 0; n < c.states_per_mode(); ++n) {
    const double a = 0.9 * std::sqrt(static_cast<double>(n + 1));
    c2 += w(n) * std::cos(a) * std::cos(a);
  }
  CHECK(mth.c2 == doctest::Approx(c2).epsilon(1e-13));
  CHECK(std::abs(mth.sac) == 0.0);
}

TEST_CASE("vacuum input gives even odds regardless of settings") {
  for (const double theta : {0.3, std::numbers::pi / 4.0, 1.1}) {
    for (const double phi : {0.0, 1.0, 4.4}) {
      QoriConfig config;
      config.theta = theta;
      config.phi = PhaseShift(phi);
      const DetectionProbabilities p = detection_probabilities(config);
      CHECK(std::abs(p.p_aa - 0.5) < 1e-12);
      CHECK(std::abs(p.p_ab - 0.5) < 1e-12);
    }
  }
}

TEST_CASE("number and thermal states wash out the fringes") {
  const std::vector<double> grid = fourier_grid(16);

  QoriConfig fock;
  fock.field_prep = FieldPreparation::fock(2);
  fock.theta = 0.8;
  const std::vector<double> pf = fringe_samples(fock, grid);
  const auto fit_f = fit_harmonic(pf, 1);
  CHECK(fit_f.amplitude < 1e-14);

  QoriConfig thermal;
  thermal.field_prep = FieldPreparation::thermal(0.25);
  thermal.theta = 0.8;
  const std::vector<double> pt = fringe_samples(thermal, grid);
  const auto fit_t = fit_harmonic(pt, 1);
  CHECK(fit_t.amplitude < 1e-14);
  CHECK(pt.front() == doctest::Approx(pt.back()).epsilon(1e-14));
}

TEST_CASE("coherent fringes carry the contrast factor at offset pi") {
  const FockCutoff c(16);
  const double theta = 0.7;
  const FieldPreparation prep = FieldPreparation::coherent(Complex(0.9, 0.3));

  QoriConfig config;
  config.field_prep = prep;
  config.theta = theta;
  config.cutoff = c;

  const std::vector<double> grid = fourier_grid(32);
  const std::vector<double> p = fringe_samples(config, grid);
  const auto fit = fit_harmonic(p, 1);

  CHECK(fit.mean == doctest::Approx(0.5).epsilon(1e-12));
  const Complex contrast = contrast_factor(prep, theta, c);
  CHECK(2.0 * fit.amplitude ==
        doctest::Approx(std::abs(contrast)).epsilon(1e-10));
  // p_aa(phi) = 1/2 + |<SaC>| cos(phi + delta - arg<SaC>) at delta = pi
  CHECK(std::abs(wrap_angle(fit.phase + std::arg(contrast) -
                            kQoriFringeOffset)) < 1e-10);
}

TEST_CASE("detector statistics are a resolved probability pair") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    QoriConfig config;
    config.theta = 2.0 * std::numbers::pi * uniform01(rng);
    config.phi = PhaseShift(2.0 * std::numbers::pi * uniform01(rng));
    switch (trial % 4) {
      case 0:
        config.field_prep = FieldPreparation::vacuum();
        break;
      case 1:
        config.field_prep = FieldPreparation::fock(trial % 5);
        break;
      case 2:
        config.field_prep = FieldPreparation::coherent(
            Complex(0.7 * uniform01(rng), 0.7 * uniform01(rng)));
        break;
      default:
        config.field_prep = FieldPreparation::thermal(0.25 * uniform01(rng));
        break;
    }
    const DetectionProbabilities p = detection_probabilities(config);
    CHECK(p.p_aa >= 0.0);
    CHECK(p.p_ab >= 0.0);
    CHECK(p.p_aa + p.p_ab == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("merger angle steers between way readout and fringe readout") {
  QoriConfig config;
  config.field_prep = FieldPreparation::fock(1);
  config.theta = 1.2;

  config.bm_mixing = 0.0;  // no merger: upper detector reads w+
  const FieldMoments m =
      field_moments(config.field_prep, config.theta, config.cutoff);
  CHECK(detection_probabilities(config).p_aa ==
        doctest::Approx(m.c2).epsilon(1e-12));

  config.bm_mixing = std::numbers::pi / 2.0;  // full swap reads w-
  CHECK(detection_probabilities(config).p_aa ==
        doctest::Approx(m.s2aadag).epsilon(1e-12));
}

TEST_CASE("thermal runs reduce to the joint atom and mode-1 operator") {
  QoriConfig config;
  config.field_prep = FieldPreparation::thermal(0.15);
  config.theta = 0.9;
  config.phi = PhaseShift(0.4);
  config.cutoff = FockCutoff(12);

  const auto result = run_qori(config);
  REQUIRE(std::holds_alternative<DensityOperator>(result));
  const DensityOperator& rho = std::get<DensityOperator>(result);
  CHECK(rho.subsystem() == Subsystem::atom_mode1);
  CHECK(rho.cutoff().n_max() == 13);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
  CHECK(rho.purity() < 1.0);

  const DensityOperator atom = partial_trace(rho, Subsystem::atom);
  const double born_p_aa = atom.matrix()(0, 0).real();
  CHECK(born_p_aa ==
        doctest::Approx(detection_probabilities(config).p_aa)
            .epsilon(1e-12));
}

TEST_CASE("bright coherent fields need headroom above the tail rule") {
  QoriConfig config;
  config.field_prep = FieldPreparation::coherent(Complex(2.0, 0.0));
  config.theta = 0.8;

  config.cutoff = FockCutoff(8);  // tail above 1e-10: rejected up front
  CHECK_THROWS_AS(detection_probabilities(config), ConfigError);

  // admitted at n_max = 24 but the top-rung guard still trips inside
  config.cutoff = FockCutoff(24);
  CHECK_NOTHROW(config.validate());
  CHECK_THROWS_AS(run_qori(config), CutoffOverflowError);

  config.cutoff = FockCutoff(28);
  const DetectionProbabilities p = detection_probabilities(config);
  CHECK(p.p_aa + p.p_ab == doctest::Approx(1.0).epsilon(1e-12));
}
