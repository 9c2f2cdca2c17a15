// Copyright 2026 The hamest Authors
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

// Quantum Fisher information engines.
//
// All derivatives are central differences with evaluation points x -/+ dx/2.
// Values are per single use of the channel; repetitions only enter through
// precision_bound.

#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "hamest/constants.hpp"
#include "hamest/matrix.hpp"

namespace hamest {

enum class QfiMethod { CteFd, Generator, PureFd, Sld, BuresFd };

constexpr std::string_view to_string(QfiMethod m) {
  switch (m) {
    case QfiMethod::CteFd: return "cte_fd";
    case QfiMethod::Generator: return "generator";
    case QfiMethod::PureFd: return "pure_fd";
    case QfiMethod::Sld: return "sld";
    case QfiMethod::BuresFd: return "bures_fd";
  }
  return "unknown";
}

struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::CteFd;
  std::optional<double> dx_used;
};

/// A normalised pure input state.
class Probe {
 public:
  /// Throws InvalidState unless |psi| = 1 within 1e-12.
  explicit Probe(ComplexVector amplitudes);
  /// Normalises first; throws InvalidState for the zero vector.
  static Probe normalized(const ComplexVector& amplitudes);
  /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
  static Probe bloch(double polar, double azimuth);

  const ComplexVector& amplitudes() const noexcept { return psi_; }
  Eigen::Index dim() const noexcept { return psi_.size(); }
  DensityMatrix density() const { return DensityMatrix::pure(psi_); }

 private:
  ComplexVector psi_;
};

using UnitaryFamily = std::function<UnitaryMatrix(double)>;
using DensityFamily = std::function<DensityMatrix(double)>;

/// 8 (1 - cos c) / dx^2 with c = c_te(U(x - dx/2)^dagger U(x + dx/2)), evaluated
/// as 16 sin^2(c/2) / dx^2. Throws StepTooLarge if the spread wraps past pi.
QfiResult channel_qfi_fd(const UnitaryFamily& family, double x, double dx = kDefaultDx);

/// Spread^2 of the local generator h = i (dU/dx) U^dagger.
/// Throws DerivativeInaccurate if |h - h^dagger| > 1e-6 before symmetrising.
QfiResult channel_qfi_generator(const UnitaryFamily& family, double x, double dx = kDefaultDx);

/// Hermitian local generator i (dU/dx) U(x)^dagger by central difference.
HermitianMatrix local_generator(const UnitaryFamily& family, double x, double dx = kDefaultDx);

/// Input state U(x)^dagger (v_max + v_min)/sqrt(2), where v are extremal
/// eigenvectors of the local generator. Throws NoInformation for a zero-spread generator.
Probe optimal_probe(const UnitaryFamily& family, double x, double dx = kDefaultDx);

/// 8 (1 - |<psi(x - dx/2)|psi(x + dx/2)>|) / dx^2 for psi(x) = U(x) probe.
QfiResult pure_state_qfi(const UnitaryFamily& family, const Probe& probe, double x, double dx = kDefaultDx);

/// sum_{ij} 2 |<i|drho|j>|^2 / (p_i + p_j) over eigenpairs of rho with p_i + p_j > 1e-10.
/// Throws InconsistentDerivative when |tr drho| > 1e-8.
QfiResult mixed_state_qfi_sld(const DensityMatrix& rho, const HermitianMatrix& drho);

/// 8 (1 - F(rho(x - dx/2), rho(x + dx/2))) / dx^2.
QfiResult bures_qfi_fd(const DensityFamily& family, double x, double dx);

/// 1 / sqrt(n J); +infinity when J = 0.
double precision_bound(double qfi, long long repetitions);

}  // namespace hamest
