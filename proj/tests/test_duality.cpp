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

#include "oracles.hpp"
#include "qramsey/duality.hpp"

using namespace qramsey;
using qramsey::testing::born_way_populations;
using qramsey::testing::uniform01;

namespace {

QoriConfig pure_config(FieldPreparation prep, double theta, double phi) {
  QoriConfig config;
  config.field_prep = prep;
  config.theta = theta;
  config.phi = PhaseShift(phi);
  return config;
}

}  // namespace

TEST_CASE("vacuum input: fully predictable, no fringes, unit quality") {
  for (const double theta : {0.3, std::numbers::pi / 4.0, 1.1}) {
    const QoriConfig config =
        pure_config(FieldPreparation::vacuum(), theta, 0.7);
    const DualityReport r = duality_report(config);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    CHECK(r.w_plus == doctest::Approx(c * c).epsilon(1e-14));
    CHECK(r.w_minus == doctest::Approx(s * s).epsilon(1e-14));
    CHECK(r.predictability ==
          doctest::Approx(std::abs(std::cos(2.0 * theta))).epsilon(1e-13));
    CHECK(r.visibility == 0.0);
    CHECK(r.quality == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.distinguishability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.identity_residual) < 1e-12);
    CHECK_FALSE(r.degenerate);
  }
}

TEST_CASE("way probabilities agree with the Born populations") {
  std::mt19937_64 rng(13);
  const FockCutoff c(16);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    const FieldPreparation prep =
        trial % 2 == 0 ? FieldPreparation::fock(trial % 6)
                       : FieldPreparation::coherent(Complex(
                             0.7 * uniform01(rng), 0.7 * uniform01(rng)));
    const QoriConfig config = pure_config(prep, theta, 0.0);

    // read the populations off the simulated state between cavity and merger
    const PureState pre_merger = jc_apply(
        make_state(AtomLevel::upper, prep, FieldPreparation::vacuum(), c),
        CavityMode::m1, theta);
    const auto born = born_way_populations(pre_merger);

    const auto [w_plus, w_minus] = way_probabilities(config);
    CHECK(w_plus == doctest::Approx(born.w_plus).epsilon(1e-11));
    CHECK(w_minus == doctest::Approx(born.w_minus).epsilon(1e-11));
    CHECK(w_plus + w_minus == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("zero pulse area degenerates predictably") {
  const QoriConfig config = pure_config(FieldPreparation::vacuum(), 0.0, 0.0);
  const DualityReport r = duality_report(config);
  CHECK(r.degenerate);
  CHECK(r.predictability == doctest::Approx(1.0));
  CHECK(r.quality == 0.0);
  CHECK(r.distinguishability == 1.0);
  CHECK(std::abs(r.identity_residual) < 1e-12);
}

TEST_CASE("number states keep full distinguishability at any pulse area") {
  const QoriConfig config = pure_config(FieldPreparation::fock(1),
                                        std::numbers::pi / 3.0, 0.0);
  const DualityReport r = duality_report(config);
  const double angle = std::numbers::pi / 3.0 * std::numbers::sqrt2;
  CHECK(r.w_plus ==
        doctest::Approx(std::cos(angle) * std::cos(angle)).epsilon(1e-13));
  CHECK(r.visibility == 0.0);
  CHECK(r.quality == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.distinguishability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coherent visibility equals the measured fringe contrast") {
  const FieldPreparation prep = FieldPreparation::coherent(Complex(0.8, 0.2));
  const QoriConfig config = pure_config(prep, 0.6, 0.0);
  CHECK(visibility(config) ==
        doctest::Approx(std::abs(contrast_factor(prep, 0.6, config.cutoff)))
            .epsilon(1e-14));
  CHECK(visibility(config) > 0.1);
}

TEST_CASE("duality identity holds across randomized pure configurations") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    FieldPreparation prep = FieldPreparation::vacuum();
    switch (trial % 3) {
      case 0:
        prep = FieldPreparation::vacuum();
        break;
      case 1:
        prep = FieldPreparation::fock(trial % 8);
        break;
      default:
        prep = FieldPreparation::coherent(
            Complex(1.6 * uniform01(rng) - 0.8, 1.6 * uniform01(rng) - 0.8));
        break;
    }
    const QoriConfig config = pure_config(
        prep, 2.0 * std::numbers::pi * uniform01(rng),
        2.0 * std::numbers::pi * uniform01(rng));
    const DualityReport r = duality_report(config);

    CHECK(std::abs(r.identity_residual) < 1e-9);
    for (const double x : {r.predictability, r.visibility, r.quality,
                           r.distinguishability}) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0 + 1e-12);
    }
    // pure preparations saturate D^2 + V^2 = 1
    CHECK(r.distinguishability * r.distinguishability +
              r.visibility * r.visibility ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("thermal preparations keep way readout but lose the pure-state "
          "quantities") {
  QoriConfig config;
  config.field_prep = FieldPreparation::thermal(0.2);
  config.theta = 0.9;

  const auto [w_plus, w_minus] = way_probabilities(config);
  CHECK(w_plus + w_minus == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_NOTHROW(predictability(config));

  CHECK_THROWS_AS(visibility(config), ConfigError);
  CHECK_THROWS_AS(duality_report(config), ConfigError);
  CHECK_THROWS_AS(quality_and_distinguishability(config), ConfigError);
}
