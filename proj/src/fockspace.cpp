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

#include "qramsey/fockspace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qramsey {

namespace {

constexpr int kMaxCutoff = 2047;  // keeps the composite dimension sane
constexpr double kDumpThreshold = 1e-15;

double parse_finite_double(std::string_view text, std::string_view what) {
  std::string buf(text);
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(buf, &pos);
  } catch (const std::exception&) {
    throw ConfigError("field spec: cannot parse " + std::string(what) +
                      " from '" + buf + "'");
  }
  if (pos != buf.size() || !std::isfinite(value)) {
    throw ConfigError("field spec: cannot parse " + std::string(what) +
                      " from '" + buf + "'");
  }
  return value;
}

}  // namespace

std::string format_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string_view to_string(AtomLevel level) {
  return level == AtomLevel::upper ? "upper" : "lower";
}

std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::atom:
      return "atom";
    case Subsystem::mode1:
      return "mode1";
    case Subsystem::mode2:
      return "mode2";
    case Subsystem::modes:
      return "modes";
    case Subsystem::atom_mode1:
      return "atom_mode1";
  }
  return "?";
}

int subsystem_dim(Subsystem s, FockCutoff cutoff) {
  const int n = cutoff.states_per_mode();
  switch (s) {
    case Subsystem::atom:
      return 2;
    case Subsystem::mode1:
    case Subsystem::mode2:
      return n;
    case Subsystem::modes:
      return n * n;
    case Subsystem::atom_mode1:
      return 2 * n;
  }
  return 0;
}

FockCutoff::FockCutoff(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw ConfigError("Fock cutoff must satisfy n_max >= 1, got " +
                      std::to_string(n_max));
  }
  if (n_max > kMaxCutoff) {
    throw ConfigError("Fock cutoff n_max = " + std::to_string(n_max) +
                      " exceeds the supported maximum " +
                      std::to_string(kMaxCutoff));
  }
}

PureState::PureState(Eigen::VectorXcd amplitudes, FockCutoff cutoff)
    : amp_(std::move(amplitudes)), cutoff_(cutoff) {
  if (amp_.size() != cutoff_.dim()) {
    throw ConfigError("state vector has dimension " +
                      std::to_string(amp_.size()) + ", expected " +
                      std::to_string(cutoff_.dim()));
  }
  const double norm = amp_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw ContractError("state norm " + format_g17(norm) +
                        " deviates from 1 beyond tolerance");
  }
  amp_ /= norm;
}

PureState PureState::basis(AtomLevel level, int n1, int n2,
                           FockCutoff cutoff) {
  if (n1 < 0 || n1 > cutoff.n_max() || n2 < 0 || n2 > cutoff.n_max()) {
    throw ConfigError("basis state (" + std::to_string(n1) + ", " +
                      std::to_string(n2) + ") outside cutoff n_max = " +
                      std::to_string(cutoff.n_max()));
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
  const int n = cutoff.states_per_mode();
  amp(static_cast<int>(level) * n * n + n1 * n + n2) = Complex(1.0, 0.0);
  return PureState(std::move(amp), cutoff);
}

int PureState::index(AtomLevel level, int n1, int n2) const {
  const int n = cutoff_.states_per_mode();
  return static_cast<int>(level) * n * n + n1 * n + n2;
}

Complex PureState::amplitude(AtomLevel level, int n1, int n2) const {
  return amp_(index(level, n1, n2));
}

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix, Subsystem subsystem,
                                 FockCutoff cutoff)
    : rho_(std::move(matrix)), subsystem_(subsystem), cutoff_(cutoff) {
  const int dim = subsystem_dim(subsystem, cutoff);
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw ConfigError("density operator on " + std::string(to_string(subsystem)) +
                      " must be " + std::to_string(dim) + "x" +
                      std::to_string(dim));
  }
  const double herm_dev = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw ContractError("density operator deviates from Hermiticity by " +
                        format_g17(herm_dev));
  }
  const double trace_dev = std::abs(rho_.trace().real() - 1.0) +
                           std::abs(rho_.trace().imag());
  if (trace_dev > kProbTol) {
    throw ContractError("density operator trace deviates from 1 by " +
                        format_g17(trace_dev));
  }
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_,
                                                         Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < kEigenvalueFloor) {
    throw ContractError("density operator has eigenvalue " +
                        format_g17(min_eig) + " below the positivity floor");
  }
}

double DensityOperator::purity() const {
  // For Hermitian rho, tr(rho^2) equals the squared Frobenius norm.
  return rho_.squaredNorm();
}

double DensityOperator::entropy() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_,
                                                         Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > 0.0) {
      h -= lambda * std::log(lambda);
    }
  }
  return h;
}

FieldPreparation FieldPreparation::vacuum() {
  FieldPreparation f;
  f.kind_ = Kind::vacuum;
  return f;
}

FieldPreparation FieldPreparation::fock(int n) {
  if (n < 0) {
    throw ConfigError("Fock preparation requires n >= 0, got " +
                      std::to_string(n));
  }
  FieldPreparation f;
  f.kind_ = Kind::fock;
  f.fock_n_ = n;
  return f;
}

FieldPreparation FieldPreparation::coherent(Complex alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw ConfigError("coherent amplitude must be finite");
  }
  FieldPreparation f;
  f.kind_ = Kind::coherent;
  f.alpha_ = alpha;
  return f;
}

FieldPreparation FieldPreparation::thermal(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw ConfigError("thermal occupation must satisfy nbar >= 0");
  }
  FieldPreparation f;
  f.kind_ = Kind::thermal;
  f.nbar_ = nbar;
  return f;
}

FieldPreparation FieldPreparation::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (head == "vacuum") {
    if (!arg.empty() || colon != std::string_view::npos) {
      throw ConfigError("field spec 'vacuum' takes no argument");
    }
    return vacuum();
  }
  if (head == "fock") {
    if (arg.empty()) {
      throw ConfigError("field spec 'fock:N' requires N");
    }
    const double n = parse_finite_double(arg, "Fock number");
    if (n != std::floor(n)) {
      throw ConfigError("Fock number must be an integer, got '" +
                        std::string(arg) + "'");
    }
    return fock(static_cast<int>(n));
  }
  if (head == "coherent") {
    if (arg.empty()) {
      throw ConfigError("field spec 'coherent:RE[,IM]' requires an amplitude");
    }
    const auto comma = arg.find(',');
    const double re =
        parse_finite_double(arg.substr(0, comma), "coherent amplitude");
    double im = 0.0;
    if (comma != std::string_view::npos) {
      im = parse_finite_double(arg.substr(comma + 1), "coherent amplitude");
    }
    return coherent(Complex(re, im));
  }
  if (head == "thermal") {
    if (arg.empty()) {
      throw ConfigError("field spec 'thermal:NBAR' requires NBAR");
    }
    return thermal(parse_finite_double(arg, "thermal occupation"));
  }
  throw ConfigError("unknown field spec '" + std::string(spec) +
                    "'; expected vacuum | fock:N | coherent:RE[,IM] | "
                    "thermal:NBAR");
}

std::string FieldPreparation::to_string() const {
  switch (kind_) {
    case Kind::vacuum:
      return "vacuum";
    case Kind::fock:
      return "fock:" + std::to_string(fock_n_);
    case Kind::coherent:
      if (alpha_.imag() == 0.0) {
        return "coherent:" + format_g17(alpha_.real());
      }
      return "coherent:" + format_g17(alpha_.real()) + "," +
             format_g17(alpha_.imag());
    case Kind::thermal:
      return "thermal:" + format_g17(nbar_);
  }
  return "?";
}

double FieldPreparation::tail_probability(FockCutoff cutoff) const {
  const int n_max = cutoff.n_max();
  switch (kind_) {
    case Kind::vacuum:
      return 0.0;
    case Kind::fock:
      return fock_n_ > n_max ? 1.0 : 0.0;
    case Kind::coherent: {
      // 1 - exp(-|a|^2) sum_{n<=n_max} |a|^(2n) / n!
      const double mu = std::norm(alpha_);
      double term = std::exp(-mu);
      double head = term;
      for (int n = 1; n <= n_max; ++n) {
        term *= mu / n;
        head += term;
      }
      return std::max(0.0, 1.0 - head);
    }
    case Kind::thermal: {
      if (nbar_ == 0.0) {
        return 0.0;
      }
      const double r = nbar_ / (1.0 + nbar_);
      return std::pow(r, n_max + 1);
    }
  }
  return 0.0;
}

void FieldPreparation::require_admissible(FockCutoff cutoff) const {
  const double tail = tail_probability(cutoff);
  if (tail >= kTailTol) {
    throw ConfigError("field " + to_string() + " leaves probability " +
                      format_g17(tail) + " beyond n_max = " +
                      std::to_string(cutoff.n_max()) +
                      "; raise the cutoff");
  }
}

Eigen::VectorXcd FieldPreparation::mode_amplitudes(FockCutoff cutoff) const {
  require_admissible(cutoff);
  const int n_states = cutoff.states_per_mode();
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(n_states);
  switch (kind_) {
    case Kind::vacuum:
      amp(0) = 1.0;
      break;
    case Kind::fock:
      amp(fock_n_) = 1.0;
      break;
    case Kind::coherent: {
      const double mu = std::norm(alpha_);
      Complex c = std::exp(-0.5 * mu);
      amp(0) = c;
      for (int n = 1; n < n_states; ++n) {
        c *= alpha_ / std::sqrt(static_cast<double>(n));
        amp(n) = c;
      }
      amp /= amp.norm();
      break;
    }
    case Kind::thermal:
      throw ConfigError(
          "thermal field has no amplitude vector; use mode_weights");
  }
  return amp;
}

Eigen::VectorXd FieldPreparation::mode_weights(FockCutoff cutoff) const {
  require_admissible(cutoff);
  const int n_states = cutoff.states_per_mode();
  if (is_pure()) {
    return mode_amplitudes(cutoff).cwiseAbs2();
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n_states);
  if (nbar_ == 0.0) {
    w(0) = 1.0;
    return w;
  }
  const double r = nbar_ / (1.0 + nbar_);
  double p = 1.0 / (1.0 + nbar_);
  for (int n = 0; n < n_states; ++n) {
    w(n) = p;
    p *= r;
  }
  w /= w.sum();
  return w;
}

PureState make_state(AtomLevel level, const FieldPreparation& field1,
                     const FieldPreparation& field2, FockCutoff cutoff) {
  if (!field1.is_pure() || !field2.is_pure()) {
    throw ConfigError(
        "make_state requires pure field preparations; thermal ensembles are "
        "mixed at the interferometer level");
  }
  const Eigen::VectorXcd a1 = field1.mode_amplitudes(cutoff);
  const Eigen::VectorXcd a2 = field2.mode_amplitudes(cutoff);
  const int n = cutoff.states_per_mode();
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
  const int base = static_cast<int>(level) * n * n;
  for (int n1 = 0; n1 < n; ++n1) {
    for (int n2 = 0; n2 < n; ++n2) {
      amp(base + n1 * n + n2) = a1(n1) * a2(n2);
    }
  }
  return PureState(std::move(amp), cutoff);
}

Complex inner(const PureState& x, const PureState& y) {
  if (!(x.cutoff() == y.cutoff())) {
    throw ConfigError("inner product requires matching cutoffs");
  }
  return x.amplitudes().dot(y.amplitudes());
}

DensityOperator partial_trace(const PureState& state, Subsystem keep) {
  const FockCutoff cutoff = state.cutoff();
  const int n = cutoff.states_per_mode();
  const auto& psi = state.amplitudes();
  const auto at = [&](int l, int n1, int n2) {
    return psi(l * n * n + n1 * n + n2);
  };

  switch (keep) {
    case Subsystem::atom: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
      for (int l = 0; l < 2; ++l) {
        for (int m = 0; m < 2; ++m) {
          Complex acc = 0.0;
          for (int n1 = 0; n1 < n; ++n1) {
            for (int n2 = 0; n2 < n; ++n2) {
              acc += at(l, n1, n2) * std::conj(at(m, n1, n2));
            }
          }
          rho(l, m) = acc;
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
    case Subsystem::mode1: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Complex acc = 0.0;
          for (int l = 0; l < 2; ++l) {
            for (int n2 = 0; n2 < n; ++n2) {
              acc += at(l, i, n2) * std::conj(at(l, j, n2));
            }
          }
          rho(i, j) = acc;
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
    case Subsystem::mode2: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Complex acc = 0.0;
          for (int l = 0; l < 2; ++l) {
            for (int n1 = 0; n1 < n; ++n1) {
              acc += at(l, n1, i) * std::conj(at(l, n1, j));
            }
          }
          rho(i, j) = acc;
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
    case Subsystem::modes: {
      // Within each level the mode pair is contiguous, so the reduction is
      // the sum of the two level blocks' outer products.
      const int nn = n * n;
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(nn, nn);
      for (int l = 0; l < 2; ++l) {
        const Eigen::VectorXcd block = psi.segment(l * nn, nn);
        rho.noalias() += block * block.adjoint();
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
    case Subsystem::atom_mode1: {
      const int dim = 2 * n;
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
      for (int l = 0; l < 2; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int m = 0; m < 2; ++m) {
            for (int j = 0; j < n; ++j) {
              Complex acc = 0.0;
              for (int n2 = 0; n2 < n; ++n2) {
                acc += at(l, i, n2) * std::conj(at(m, j, n2));
              }
              rho(l * n + i, m * n + j) = acc;
            }
          }
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
  }
  throw ConfigError("unsupported partial trace target");
}

DensityOperator partial_trace(const DensityOperator& joint, Subsystem keep) {
  const FockCutoff cutoff = joint.cutoff();
  const int n = cutoff.states_per_mode();
  const auto& big = joint.matrix();

  if (joint.subsystem() == Subsystem::modes) {
    if (keep == Subsystem::mode1) {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Complex acc = 0.0;
          for (int n2 = 0; n2 < n; ++n2) {
            acc += big(i * n + n2, j * n + n2);
          }
          rho(i, j) = acc;
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
    if (keep == Subsystem::mode2) {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          Complex acc = 0.0;
          for (int n1 = 0; n1 < n; ++n1) {
            acc += big(n1 * n + i, n1 * n + j);
          }
          rho(i, j) = acc;
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
  }

  if (joint.subsystem() == Subsystem::atom_mode1) {
    if (keep == Subsystem::atom) {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
      for (int l = 0; l < 2; ++l) {
        for (int m = 0; m < 2; ++m) {
          Complex acc = 0.0;
          for (int i = 0; i < n; ++i) {
            acc += big(l * n + i, m * n + i);
          }
          rho(l, m) = acc;
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
    if (keep == Subsystem::mode1) {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          rho(i, j) = big(i, j) + big(n + i, n + j);
        }
      }
      return DensityOperator(std::move(rho), keep, cutoff);
    }
  }

  throw ConfigError("cannot reduce " +
                    std::string(to_string(joint.subsystem())) + " to " +
                    std::string(to_string(keep)));
}

namespace {

double checked_real(Complex value, std::string_view what) {
  if (std::abs(value.imag()) > 1e-12) {
    throw ContractError("expectation of " + std::string(what) +
                        " has imaginary residue " + format_g17(value.imag()));
  }
  return value.real();
}

[[noreturn]] void reject_observable(std::string_view name) {
  constexpr std::string_view non_hermitian[] = {
      "a1", "a2", "adag1", "adag2", "sigma_plus", "sigma_minus"};
  for (const auto candidate : non_hermitian) {
    if (name == candidate) {
      throw ConfigError("observable '" + std::string(name) +
                        "' is not Hermitian");
    }
  }
  throw ConfigError("unknown observable '" + std::string(name) + "'");
}

}  // namespace

double expectation(const PureState& state, std::string_view observable) {
  const FockCutoff cutoff = state.cutoff();
  const int n = cutoff.states_per_mode();
  const auto& psi = state.amplitudes();
  const auto at = [&](int l, int n1, int n2) {
    return psi(l * n * n + n1 * n + n2);
  };

  if (observable == "sigma_x" || observable == "sigma_y") {
    Complex acc = 0.0;  // sum of conj(psi_upper) psi_lower
    for (int n1 = 0; n1 < n; ++n1) {
      for (int n2 = 0; n2 < n; ++n2) {
        acc += std::conj(at(0, n1, n2)) * at(1, n1, n2);
      }
    }
    return observable == "sigma_x" ? 2.0 * acc.real() : 2.0 * acc.imag();
  }

  double value = 0.0;
  bool known = true;
  for (int l = 0; l < 2; ++l) {
    for (int n1 = 0; n1 < n; ++n1) {
      for (int n2 = 0; n2 < n; ++n2) {
        const double p = std::norm(at(l, n1, n2));
        const double upper = l == 0 ? 1.0 : 0.0;
        if (observable == "sigma_z") {
          value += (l == 0 ? 1.0 : -1.0) * p;
        } else if (observable == "n1") {
          value += n1 * p;
        } else if (observable == "n2") {
          value += n2 * p;
        } else if (observable == "n_total") {
          value += (n1 + n2) * p;
        } else if (observable == "n1_plus_upper") {
          value += (n1 + upper) * p;
        } else if (observable == "n2_plus_upper") {
          value += (n2 + upper) * p;
        } else {
          known = false;
        }
      }
    }
  }
  if (!known) {
    reject_observable(observable);
  }
  return value;
}

double expectation(const DensityOperator& rho, std::string_view observable) {
  const int n = rho.cutoff().states_per_mode();
  const auto& r = rho.matrix();

  switch (rho.subsystem()) {
    case Subsystem::atom: {
      if (observable == "sigma_z") {
        return checked_real(r(0, 0) - r(1, 1), observable);
      }
      if (observable == "sigma_x") {
        return checked_real(r(0, 1) + r(1, 0), observable);
      }
      if (observable == "sigma_y") {
        return checked_real(Complex(0, 1) * (r(0, 1) - r(1, 0)), observable);
      }
      break;
    }
    case Subsystem::mode1:
    case Subsystem::mode2: {
      const bool is_m1 = rho.subsystem() == Subsystem::mode1;
      if (observable == "n" || (is_m1 && observable == "n1") ||
          (!is_m1 && observable == "n2")) {
        Complex acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += static_cast<double>(i) * r(i, i);
        }
        return checked_real(acc, observable);
      }
      break;
    }
    case Subsystem::modes: {
      if (observable == "n1" || observable == "n2" ||
          observable == "n_total") {
        Complex acc = 0.0;
        for (int n1 = 0; n1 < n; ++n1) {
          for (int n2 = 0; n2 < n; ++n2) {
            double w = 0.0;
            if (observable == "n1") {
              w = n1;
            } else if (observable == "n2") {
              w = n2;
            } else {
              w = n1 + n2;
            }
            acc += w * r(n1 * n + n2, n1 * n + n2);
          }
        }
        return checked_real(acc, observable);
      }
      break;
    }
    case Subsystem::atom_mode1: {
      if (observable == "sigma_z" || observable == "n1" ||
          observable == "n1_plus_upper") {
        Complex acc = 0.0;
        for (int l = 0; l < 2; ++l) {
          for (int i = 0; i < n; ++i) {
            double w = 0.0;
            const double upper = l == 0 ? 1.0 : 0.0;
            if (observable == "sigma_z") {
              w = l == 0 ? 1.0 : -1.0;
            } else if (observable == "n1") {
              w = i;
            } else {
              w = i + upper;
            }
            acc += w * r(l * n + i, l * n + i);
          }
        }
        return checked_real(acc, observable);
      }
      if (observable == "sigma_x" || observable == "sigma_y") {
        Complex acc = 0.0;  // sum over rho_{(upper,i),(lower,i)}
        for (int i = 0; i < n; ++i) {
          acc += r(i, n + i);
        }
        return observable == "sigma_x" ? 2.0 * acc.real() : -2.0 * acc.imag();
      }
      break;
    }
  }
  reject_observable(observable);
}

double clamp_probability(double p) {
  if (p < -kProbTol || p > 1.0 + kProbTol) {
    throw ContractError("probability " + format_g17(p) +
                        " outside [0,1] beyond tolerance");
  }
  return std::clamp(p, 0.0, 1.0);
}

std::string dump_state(const PureState& state) {
  const FockCutoff cutoff = state.cutoff();
  const int n = cutoff.states_per_mode();
  std::ostringstream out;
  out << "# layout=atom-major-v1 n_max=" << cutoff.n_max()
      << " threshold=1e-15\n";
  for (int l = 0; l < 2; ++l) {
    for (int n1 = 0; n1 < n; ++n1) {
      for (int n2 = 0; n2 < n; ++n2) {
        const Complex a =
            state.amplitude(static_cast<AtomLevel>(l), n1, n2);
        if (std::abs(a) > kDumpThreshold) {
          out << to_string(static_cast<AtomLevel>(l)) << ' ' << n1 << ' '
              << n2 << ' ' << format_g17(a.real()) << ' '
              << format_g17(a.imag()) << '\n';
        }
      }
    }
  }
  return out.str();
}

}  // namespace qramsey
