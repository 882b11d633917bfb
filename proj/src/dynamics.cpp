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

#include "qramsey/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace qramsey {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void check_unitary_drift(const Eigen::VectorXcd& amp) {
  const double drift = std::abs(amp.norm() - 1.0);
  if (drift > kUnitaryTol) {
    throw ContractError("unitary propagation drifted the norm by " +
                        format_g17(drift));
  }
}

// Population of |upper, n_max> on the addressed mode.
double top_rung_population(const PureState& state, CavityMode mode) {
  const int n = state.cutoff().states_per_mode();
  const int n_max = state.cutoff().n_max();
  double pop = 0.0;
  for (int other = 0; other < n; ++other) {
    const Complex a = mode == CavityMode::m1
                          ? state.amplitude(AtomLevel::upper, n_max, other)
                          : state.amplitude(AtomLevel::upper, other, n_max);
    pop += std::norm(a);
  }
  return pop;
}

void check_top_rung(const PureState& state, CavityMode mode) {
  const double pop = top_rung_population(state, mode);
  if (pop > kTopRungTol) {
    throw CutoffOverflowError(
        "population " + format_g17(pop) + " at |upper, n_max> of mode " +
        std::to_string(static_cast<int>(mode)) +
        " would couple past the Fock cutoff; raise n_max");
  }
}

}  // namespace

InteractionParams::InteractionParams(double omega_in, double tau_in)
    : omega(omega_in), tau(tau_in) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("Rabi frequency must be positive and finite");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ConfigError("interaction time must be nonnegative and finite");
  }
}

PhaseShift::PhaseShift(double phi) : phi_(phi) {
  if (!std::isfinite(phi)) {
    throw ConfigError("phase shift must be finite");
  }
}

double PhaseShift::reduced() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi_, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  return r;
}

ScDiagonals sc_diagonals(double theta, FockCutoff cutoff) {
  if (!std::isfinite(theta)) {
    throw ConfigError("pulse area must be finite");
  }
  const int n = cutoff.states_per_mode();
  ScDiagonals d{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int k = 0; k < n; ++k) {
    const double root = std::sqrt(static_cast<double>(k + 1));
    d.c(k) = std::cos(theta * root);
    d.s(k) = std::sin(theta * root) / root;
  }
  return d;
}

PureState jc_apply(const PureState& state, CavityMode mode, double theta) {
  if (!std::isfinite(theta)) {
    throw ConfigError("pulse area must be finite");
  }
  check_top_rung(state, mode);

  const FockCutoff cutoff = state.cutoff();
  const int n = cutoff.states_per_mode();
  const int n_max = cutoff.n_max();
  Eigen::VectorXcd out = state.amplitudes();

  const auto idx = [n](int l, int n1, int n2) {
    return l * n * n + n1 * n + n2;
  };

  // Two-state manifolds {|upper, k>, |lower, k+1>} of the addressed mode
  // rotate independently for every Fock index of the spectator mode;
  // |lower, 0> and the (guarded, empty) |upper, n_max> are left alone.
  for (int k = 0; k < n_max; ++k) {
    const double root = std::sqrt(static_cast<double>(k + 1));
    const double c = std::cos(theta * root);
    const Complex is = kMinusI * std::sin(theta * root);
    for (int other = 0; other < n; ++other) {
      int iu = 0;
      int il = 0;
      if (mode == CavityMode::m1) {
        iu = idx(0, k, other);
        il = idx(1, k + 1, other);
      } else {
        iu = idx(0, other, k);
        il = idx(1, other, k + 1);
      }
      const Complex u = state.amplitudes()(iu);
      const Complex l = state.amplitudes()(il);
      out(iu) = c * u + is * l;
      out(il) = c * l + is * u;
    }
  }

  check_unitary_drift(out);
  return PureState(std::move(out), cutoff);
}

PureState jc_oracle(const PureState& state, CavityMode mode, double theta) {
  if (!std::isfinite(theta)) {
    throw ConfigError("pulse area must be finite");
  }
  check_top_rung(state, mode);

  const FockCutoff cutoff = state.cutoff();
  const int n = cutoff.states_per_mode();
  const int ng = n + 1;  // one guard rung on the addressed mode

  // Coupling generator g = a sigma+ + a^dag sigma- on atom x addressed
  // mode, assembled densely on the guarded space. Basis index l * ng + k.
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * ng, 2 * ng);
  for (int k = 0; k + 1 < ng; ++k) {
    const double root = std::sqrt(static_cast<double>(k + 1));
    g(0 * ng + k, 1 * ng + k + 1) = root;  // sigma+ a
    g(1 * ng + k + 1, 0 * ng + k) = root;  // sigma- a^dag
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  Eigen::VectorXcd phases(2 * ng);
  for (int i = 0; i < 2 * ng; ++i) {
    phases(i) = std::exp(kMinusI * theta * solver.eigenvalues()(i));
  }
  const Eigen::MatrixXcd u =
      v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();

  // Embed, propagate one spectator slice at a time, project the guard away.
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cutoff.dim());
  const auto idx = [n](int l, int n1, int n2) {
    return l * n * n + n1 * n + n2;
  };
  for (int other = 0; other < n; ++other) {
    Eigen::VectorXcd slice = Eigen::VectorXcd::Zero(2 * ng);
    for (int l = 0; l < 2; ++l) {
      for (int k = 0; k < n; ++k) {
        const int full = mode == CavityMode::m1 ? idx(l, k, other)
                                                : idx(l, other, k);
        slice(l * ng + k) = state.amplitudes()(full);
      }
    }
    const Eigen::VectorXcd evolved = u * slice;
    for (int l = 0; l < 2; ++l) {
      for (int k = 0; k < n; ++k) {
        const int full = mode == CavityMode::m1 ? idx(l, k, other)
                                                : idx(l, other, k);
        out(full) = evolved(l * ng + k);
      }
    }
  }

  return PureState(std::move(out), cutoff);
}

PureState classical_pulse(const PureState& state, double mixing_theta,
                          double pulse_phase) {
  if (!std::isfinite(mixing_theta) || !std::isfinite(pulse_phase)) {
    throw ConfigError("pulse parameters must be finite");
  }
  const FockCutoff cutoff = state.cutoff();
  const int nn = cutoff.states_per_mode() * cutoff.states_per_mode();
  const double c = std::cos(mixing_theta);
  const double s = std::sin(mixing_theta);
  const Complex down = kMinusI * std::exp(Complex(0.0, -pulse_phase)) * s;
  const Complex up = kMinusI * std::exp(Complex(0.0, pulse_phase)) * s;

  Eigen::VectorXcd out(cutoff.dim());
  for (int f = 0; f < nn; ++f) {
    const Complex u = state.amplitudes()(f);
    const Complex l = state.amplitudes()(nn + f);
    out(f) = c * u + up * l;
    out(nn + f) = c * l + down * u;
  }

  check_unitary_drift(out);
  return PureState(std::move(out), cutoff);
}

PureState phase_shifter(const PureState& state, PhaseShift phi) {
  const FockCutoff cutoff = state.cutoff();
  const int nn = cutoff.states_per_mode() * cutoff.states_per_mode();
  const Complex factor = std::exp(Complex(0.0, -phi.value()));
  Eigen::VectorXcd out = state.amplitudes();
  out.head(nn) *= factor;
  check_unitary_drift(out);
  return PureState(std::move(out), cutoff);
}

}  // namespace qramsey
