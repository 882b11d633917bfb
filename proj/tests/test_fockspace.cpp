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
#include "qramsey/fockspace.hpp"

using namespace qramsey;

namespace {

// Poisson tail with long-double accumulation; reference for the coherent
// admission rule.
long double poisson_tail(long double mu, int n_max) {
  long double term = std::exp(-mu);
  long double head = term;
  for (int n = 1; n <= n_max; ++n) {
    term *= mu / n;
    head += term;
  }
  return 1.0L - head;
}

}  // namespace

TEST_CASE("Fock cutoff validation and dimensions") {
  CHECK_THROWS_AS(FockCutoff(0), ConfigError);
  CHECK_THROWS_AS(FockCutoff(-3), ConfigError);
  const FockCutoff c(16);
  CHECK(c.n_max() == 16);
  CHECK(c.states_per_mode() == 17);
  CHECK(c.dim() == 2 * 17 * 17);
}

TEST_CASE("basis states follow the atom-major index layout") {
  const FockCutoff c(4);
  const PureState s = PureState::basis(AtomLevel::lower, 2, 3, c);
  CHECK(s.amplitude(AtomLevel::lower, 2, 3) == Complex(1.0, 0.0));
  // index = level * N^2 + n1 * N + n2 with N = 5
  CHECK(s.index(AtomLevel::lower, 2, 3) == 1 * 25 + 2 * 5 + 3);
  CHECK(s.amplitudes()(38) == Complex(1.0, 0.0));
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(PureState::basis(AtomLevel::upper, 5, 0, c), ConfigError);
  CHECK_THROWS_AS(PureState::basis(AtomLevel::upper, 0, -1, c), ConfigError);
}

TEST_CASE("pure state constructor enforces the norm gate") {
  const FockCutoff c(2);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(c.dim());
  amp(0) = 0.5;  // norm 0.5: far outside the admission window
  CHECK_THROWS_AS(PureState(amp, c), ContractError);

  amp(0) = 1.0 + 5e-11;  // inside the window: admitted and renormalized
  const PureState s(amp, c);
  CHECK(std::abs(s.norm() - 1.0) < 1e-15);

  Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(4);
  wrong(0) = 1.0;
  CHECK_THROWS_AS(PureState(wrong, c), ConfigError);
}

TEST_CASE("field preparation parsing round-trips") {
  CHECK(FieldPreparation::parse("vacuum") == FieldPreparation::vacuum());
  CHECK(FieldPreparation::parse("fock:3") == FieldPreparation::fock(3));
  CHECK(FieldPreparation::parse("coherent:1.5") ==
        FieldPreparation::coherent(Complex(1.5, 0.0)));
  CHECK(FieldPreparation::parse("coherent:0.5,-0.25") ==
        FieldPreparation::coherent(Complex(0.5, -0.25)));
  CHECK(FieldPreparation::parse("thermal:0.8") ==
        FieldPreparation::thermal(0.8));

  for (const auto& prep :
       {FieldPreparation::vacuum(), FieldPreparation::fock(7),
        FieldPreparation::coherent(Complex(0.3, 0.7)),
        FieldPreparation::thermal(1.25)}) {
    CHECK(FieldPreparation::parse(prep.to_string()) == prep);
  }

  CHECK_THROWS_AS(FieldPreparation::parse("fock:"), ConfigError);
  CHECK_THROWS_AS(FieldPreparation::parse("fock:2.5"), ConfigError);
  CHECK_THROWS_AS(FieldPreparation::parse("fock:-1"), ConfigError);
  CHECK_THROWS_AS(FieldPreparation::parse("coherent:abc"), ConfigError);
  CHECK_THROWS_AS(FieldPreparation::parse("thermal:-0.1"), ConfigError);
  CHECK_THROWS_AS(FieldPreparation::parse("squeezed:1"), ConfigError);
  CHECK_THROWS_AS(FieldPreparation::parse("vacuum:1"), ConfigError);
}

TEST_CASE("tail probabilities match direct summation") {
  const FieldPreparation coh = FieldPreparation::coherent(Complex(2.0, 0.0));
  for (const int n_max : {8, 16, 24}) {
    const double reference =
        static_cast<double>(poisson_tail(4.0L, n_max));
    CHECK(coh.tail_probability(FockCutoff(n_max)) ==
          doctest::Approx(reference).epsilon(1e-12));
  }
  // alpha = 2 at n_max = 24 clears the 1e-10 admission rule
  CHECK(coh.tail_probability(FockCutoff(24)) < 1e-10);
  CHECK_NOTHROW(coh.require_admissible(FockCutoff(24)));
  // but not at n_max = 8
  CHECK_THROWS_AS(coh.require_admissible(FockCutoff(8)), ConfigError);

  const FieldPreparation th = FieldPreparation::thermal(0.5);
  long double geom = 0.0L;
  const long double r = 0.5L / 1.5L;
  long double p = 1.0L / 1.5L;
  for (int n = 0; n <= 10; ++n) {
    geom += p;
    p *= r;
  }
  CHECK(th.tail_probability(FockCutoff(10)) ==
        doctest::Approx(static_cast<double>(1.0L - geom)).epsilon(1e-12));

  CHECK(FieldPreparation::fock(3).tail_probability(FockCutoff(2)) == 1.0);
  CHECK_THROWS_AS(FieldPreparation::fock(3).require_admissible(FockCutoff(2)),
                  ConfigError);
  CHECK(FieldPreparation::vacuum().tail_probability(FockCutoff(1)) == 0.0);
}

TEST_CASE("mode amplitudes and weights are renormalized") {
  const FockCutoff c(16);
  const FieldPreparation coh = FieldPreparation::coherent(Complex(1.2, 0.4));
  const Eigen::VectorXcd amp = coh.mode_amplitudes(c);
  CHECK(std::abs(amp.norm() - 1.0) < 1e-14);
  // amplitude ratio a_{n+1}/a_n = alpha / sqrt(n+1)
  const Complex ratio = amp(3) / amp(2);
  CHECK(std::abs(ratio - Complex(1.2, 0.4) / std::sqrt(3.0)) < 1e-12);

  const Eigen::VectorXd w = FieldPreparation::thermal(0.25).mode_weights(c);
  CHECK(std::abs(w.sum() - 1.0) < 1e-14);
  CHECK(w(1) / w(0) == doctest::Approx(0.25 / 1.25).epsilon(1e-12));
  CHECK_THROWS_AS(FieldPreparation::thermal(0.25).mode_amplitudes(c),
                  ConfigError);
}

TEST_CASE("make_state builds the product state") {
  const FockCutoff c(12);
  const FieldPreparation f1 = FieldPreparation::coherent(Complex(0.9, 0.0));
  const FieldPreparation f2 = FieldPreparation::fock(2);
  const PureState s = make_state(AtomLevel::upper, f1, f2, c);

  const Eigen::VectorXcd a1 = f1.mode_amplitudes(c);
  CHECK(std::abs(s.amplitude(AtomLevel::upper, 3, 2) - a1(3)) < 1e-14);
  CHECK(s.amplitude(AtomLevel::upper, 3, 1) == Complex(0.0, 0.0));
  CHECK(s.amplitude(AtomLevel::lower, 0, 2) == Complex(0.0, 0.0));

  CHECK_THROWS_AS(make_state(AtomLevel::upper, FieldPreparation::thermal(1.0),
                             f2, c),
                  ConfigError);
}

TEST_CASE("inner product conjugates the left argument") {
  const FockCutoff c(2);
  Eigen::VectorXcd ax = Eigen::VectorXcd::Zero(c.dim());
  ax(0) = Complex(0.0, 1.0);
  const PureState x(ax, c);
  const PureState y = PureState::basis(AtomLevel::upper, 0, 0, c);
  CHECK(std::abs(inner(x, y) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(inner(y, x) - Complex(0.0, 1.0)) < 1e-15);
  CHECK_THROWS_AS(inner(x, PureState::basis(AtomLevel::upper, 0, 0,
                                            FockCutoff(3))),
                  ConfigError);
}

TEST_CASE("partial traces of a product state are pure") {
  const FockCutoff c(12);
  const PureState s = make_state(
      AtomLevel::upper, FieldPreparation::coherent(Complex(0.7, 0.2)),
      FieldPreparation::vacuum(), c);
  for (const Subsystem keep :
       {Subsystem::atom, Subsystem::mode1, Subsystem::mode2, Subsystem::modes,
        Subsystem::atom_mode1}) {
    const DensityOperator rho = partial_trace(s, keep);
    CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.entropy() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("partial traces of an entangled state show mixing") {
  const FockCutoff c(3);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(c.dim());
  // (|upper, 0, 0> + |lower, 1, 0>) / sqrt(2)
  amp(0) = 1.0 / std::numbers::sqrt2;
  amp(c.states_per_mode() * c.states_per_mode() + c.states_per_mode()) =
      1.0 / std::numbers::sqrt2;
  const PureState s(amp, c);

  const DensityOperator atom = partial_trace(s, Subsystem::atom);
  CHECK(atom.purity() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(atom.entropy() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const DensityOperator mode1 = partial_trace(s, Subsystem::mode1);
  CHECK(mode1.matrix()(0, 0).real() == doctest::Approx(0.5));
  CHECK(mode1.matrix()(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(mode1.matrix()(0, 1)) < 1e-15);

  // reducing the joint two-mode operator must agree with the direct route
  const DensityOperator modes = partial_trace(s, Subsystem::modes);
  const DensityOperator m1_via_joint = partial_trace(modes, Subsystem::mode1);
  CHECK((m1_via_joint.matrix() - mode1.matrix()).cwiseAbs().maxCoeff() <
        1e-14);

  const DensityOperator am1 = partial_trace(s, Subsystem::atom_mode1);
  const DensityOperator atom_via_joint = partial_trace(am1, Subsystem::atom);
  CHECK((atom_via_joint.matrix() - atom.matrix()).cwiseAbs().maxCoeff() <
        1e-14);

  CHECK_THROWS_AS(partial_trace(modes, Subsystem::atom), ConfigError);
}

TEST_CASE("density operator constructor rejects invalid matrices") {
  const FockCutoff c(2);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = Complex(0.5, 0.0);  // not Hermitian against the zero (1,0)
  CHECK_THROWS_AS(DensityOperator(bad, Subsystem::atom, c), ContractError);

  Eigen::MatrixXcd off_trace = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityOperator(off_trace, Subsystem::atom, c),
                  ContractError);

  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(negative, Subsystem::atom, c),
                  ContractError);

  Eigen::MatrixXcd wrong_dim = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
  CHECK_THROWS_AS(DensityOperator(wrong_dim, Subsystem::atom, c),
                  ConfigError);
}

TEST_CASE("named expectation values") {
  const FockCutoff c(4);
  const PureState s = make_state(AtomLevel::upper, FieldPreparation::fock(2),
                                 FieldPreparation::fock(1), c);
  CHECK(expectation(s, "sigma_z") == doctest::Approx(1.0));
  CHECK(expectation(s, "n1") == doctest::Approx(2.0));
  CHECK(expectation(s, "n2") == doctest::Approx(1.0));
  CHECK(expectation(s, "n_total") == doctest::Approx(3.0));
  CHECK(expectation(s, "n1_plus_upper") == doctest::Approx(3.0));
  CHECK(expectation(s, "sigma_x") == doctest::Approx(0.0));

  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(c.dim());
  const int nn = c.states_per_mode() * c.states_per_mode();
  amp(0) = 1.0 / std::numbers::sqrt2;              // |upper, 0, 0>
  amp(nn) = Complex(0.0, 1.0 / std::numbers::sqrt2);  // i |lower, 0, 0>
  const PureState plus_y(amp, c);
  CHECK(expectation(plus_y, "sigma_y") == doctest::Approx(1.0));
  CHECK(expectation(plus_y, "sigma_x") == doctest::Approx(0.0));
  CHECK(expectation(plus_y, "sigma_z") == doctest::Approx(0.0));

  CHECK_THROWS_AS(expectation(s, "sigma_plus"), ConfigError);
  CHECK_THROWS_AS(expectation(s, "a1"), ConfigError);
  CHECK_THROWS_AS(expectation(s, "bogus"), ConfigError);

  // density-operator route agrees with the pure route
  const DensityOperator atom = partial_trace(plus_y, Subsystem::atom);
  CHECK(expectation(atom, "sigma_y") == doctest::Approx(1.0));
  const DensityOperator m1 = partial_trace(s, Subsystem::mode1);
  CHECK(expectation(m1, "n") == doctest::Approx(2.0));
  const DensityOperator am1 = partial_trace(s, Subsystem::atom_mode1);
  CHECK(expectation(am1, "n1_plus_upper") == doctest::Approx(3.0));
  CHECK_THROWS_AS(expectation(atom, "n1"), ConfigError);
}

TEST_CASE("probability clamp asserts before clamping") {
  CHECK(clamp_probability(0.5) == 0.5);
  CHECK(clamp_probability(1.0 + 5e-11) == 1.0);
  CHECK(clamp_probability(-5e-11) == 0.0);
  CHECK_THROWS_AS(clamp_probability(1.0 + 2e-10), ContractError);
  CHECK_THROWS_AS(clamp_probability(-2e-10), ContractError);
}

TEST_CASE("state dumps are exact and ordered") {
  const FockCutoff c(2);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(c.dim());
  amp(0) = std::sqrt(0.5);                         // |upper, 0, 0>
  amp(2 * 3 + 1) = Complex(0.0, -std::sqrt(0.5));  // |upper, 2, 1>
  const PureState s(amp, c);
  const std::string dump = dump_state(s);
  CHECK(dump ==
        "# layout=atom-major-v1 n_max=2 threshold=1e-15\n"
        "upper 0 0 0.70710678118654757 0\n"
        "upper 2 1 0 -0.70710678118654757\n");
}

TEST_CASE("g17 formatting survives a round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const double x =
        (2.0 * qramsey::testing::uniform01(rng) - 1.0) *
        std::pow(10.0, std::floor(20.0 * qramsey::testing::uniform01(rng)) -
                           10.0);
    CHECK(std::stod(format_g17(x)) == x);
  }
  CHECK(format_g17(0.5) == "0.5");
  CHECK(format_g17(1.0) == "1");
}
