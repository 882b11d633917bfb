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
#include <complex>
#include <string>
#include <string_view>

#include "qramsey/errors.hpp"

namespace qramsey {

using Complex = std::complex<double>;

// Numerical contract constants shared across the library.
inline constexpr double kNormTol = 1e-10;      // admission gate on raw vectors
inline constexpr double kUnitaryTol = 1e-12;   // norm drift per operation
inline constexpr double kProbTol = 1e-10;      // probability clamp window
inline constexpr double kTailTol = 1e-10;      // discarded field tail weight
inline constexpr double kTopRungTol = 1e-12;   // top-rung population guard
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

enum class AtomLevel { upper = 0, lower = 1 };

std::string_view to_string(AtomLevel level);

// Truncation on each cavity mode: Fock states |0..n_max| are kept.
class FockCutoff {
 public:
  explicit FockCutoff(int n_max);

  int n_max() const { return n_max_; }
  int states_per_mode() const { return n_max_ + 1; }
  // Dimension of atom x mode-1 x mode-2.
  int dim() const { return 2 * states_per_mode() * states_per_mode(); }

  friend bool operator==(FockCutoff, FockCutoff) = default;

 private:
  int n_max_;
};

// Which factor(s) of the composite space a reduced operator lives on.
enum class Subsystem { atom, mode1, mode2, modes, atom_mode1 };

std::string_view to_string(Subsystem s);
int subsystem_dim(Subsystem s, FockCutoff cutoff);

// Normalized vector on atom x mode-1 x mode-2 with the fixed atom-major
// layout  index = level * N^2 + n1 * N + n2,  N = n_max + 1.
// The constructor rejects vectors whose norm deviates from 1 by more than
// kNormTol and renormalizes the survivors exactly, so downstream code can
// rely on unit norm to machine precision.
class PureState {
 public:
  PureState(Eigen::VectorXcd amplitudes, FockCutoff cutoff);

  static PureState basis(AtomLevel level, int n1, int n2, FockCutoff cutoff);

  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  FockCutoff cutoff() const { return cutoff_; }

  int index(AtomLevel level, int n1, int n2) const;
  Complex amplitude(AtomLevel level, int n1, int n2) const;
  double norm() const { return amp_.norm(); }

 private:
  Eigen::VectorXcd amp_;
  FockCutoff cutoff_;
};

// Reduced density operator on one of the Subsystem factors. Construction
// checks Hermiticity (within kHermitianTol), unit trace (within kProbTol)
// and spectral positivity (eigenvalues >= kEigenvalueFloor), then
// symmetrizes so callers see an exactly Hermitian matrix.
class DensityOperator {
 public:
  DensityOperator(Eigen::MatrixXcd matrix, Subsystem subsystem,
                  FockCutoff cutoff);

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Subsystem subsystem() const { return subsystem_; }
  FockCutoff cutoff() const { return cutoff_; }

  double purity() const;   // tr(rho^2)
  double entropy() const;  // von Neumann entropy, natural logarithm

 private:
  Eigen::MatrixXcd rho_;
  Subsystem subsystem_;
  FockCutoff cutoff_;
};

// Initial field of a single cavity mode. Pure kinds (vacuum, fock, coherent)
// produce amplitude vectors; thermal produces diagonal weights only. A
// preparation is admissible at a given cutoff when the discarded tail weight
// beyond n_max is below kTailTol; the retained part is renormalized.
class FieldPreparation {
 public:
  enum class Kind { vacuum, fock, coherent, thermal };

  static FieldPreparation vacuum();
  static FieldPreparation fock(int n);
  static FieldPreparation coherent(Complex alpha);
  static FieldPreparation thermal(double nbar);

  // Parses the CLI field spec: "vacuum", "fock:N", "coherent:RE[,IM]",
  // "thermal:NBAR".
  static FieldPreparation parse(std::string_view spec);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ != Kind::thermal; }
  int fock_n() const { return fock_n_; }
  Complex alpha() const { return alpha_; }
  double nbar() const { return nbar_; }

  // Exact probability weight of Fock components above n_max.
  double tail_probability(FockCutoff cutoff) const;
  // Throws ConfigError when the tail rule rejects this cutoff.
  void require_admissible(FockCutoff cutoff) const;

  // Renormalized single-mode amplitudes (pure kinds only).
  Eigen::VectorXcd mode_amplitudes(FockCutoff cutoff) const;
  // Renormalized diagonal weights (any kind).
  Eigen::VectorXd mode_weights(FockCutoff cutoff) const;

  friend bool operator==(const FieldPreparation&,
                         const FieldPreparation&) = default;

 private:
  FieldPreparation() = default;

  Kind kind_ = Kind::vacuum;
  int fock_n_ = 0;
  Complex alpha_{0.0, 0.0};
  double nbar_ = 0.0;
};

// Product state  atom (x) field-1 (x) field-2. Both preparations must be
// pure kinds; thermal ensembles are handled by the interferometer driver.
PureState make_state(AtomLevel level, const FieldPreparation& field1,
                     const FieldPreparation& field2, FockCutoff cutoff);

Complex inner(const PureState& x, const PureState& y);

DensityOperator partial_trace(const PureState& state, Subsystem keep);
DensityOperator partial_trace(const DensityOperator& joint, Subsystem keep);

// Expectation values of named observables. Recognized on the full space:
// "sigma_z", "sigma_x", "sigma_y", "n1", "n2", "n_total", and the
// excitation count "n1_plus_upper" / "n2_plus_upper" conserved by the
// respective cavity couplings. Recognized non-Hermitian names are rejected
// with ConfigError; unknown names likewise.
double expectation(const PureState& state, std::string_view observable);
double expectation(const DensityOperator& rho, std::string_view observable);

// Asserts p within kProbTol of [0,1] (ContractError otherwise), then clamps.
double clamp_probability(double p);

// Plain-text state dump: one header line, then one line per basis state with
// |amplitude| > 1e-15, fields "level n1 n2 re im" with 17 significant digits,
// ordered by layout index.
std::string dump_state(const PureState& state);

// 17-significant-digit decimal rendering used by every serializer.
std::string format_g17(double value);

}  // namespace qramsey
