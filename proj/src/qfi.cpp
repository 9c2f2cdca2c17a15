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

#include "hamest/qfi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hamest/errors.hpp"
#include "hamest/spectral.hpp"

namespace hamest {

namespace {

void require_step(double dx) {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw Error(ErrorKind::InvalidArgument, "dx must be positive");
}

}  // namespace

Probe::Probe(ComplexVector amplitudes) : psi_(std::move(amplitudes)) {
  if (psi_.size() == 0 || std::abs(psi_.norm() - 1.0) > Tolerances::probe_norm)
    throw Error(ErrorKind::InvalidState, "probe must be a unit vector");
}

Probe Probe::normalized(const ComplexVector& amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidState, "probe must be non-zero");
  return Probe(amplitudes / n);
}

Probe Probe::bloch(double polar, double azimuth) {
  ComplexVector psi(2);
  psi << std::cos(0.5 * polar), std::polar(std::sin(0.5 * polar), azimuth);
  return Probe::normalized(psi);
}

QfiResult channel_qfi_fd(const UnitaryFamily& family, double x, double dx) {
  require_step(dx);
  const UnitaryMatrix before = family(x - 0.5 * dx);
  const UnitaryMatrix after = family(x + 0.5 * dx);
  const SpreadReport report = c_te(before.adjoint() * after);
  if (report.wraparound) {
    std::ostringstream msg;
    msg << "eigen-angle spread " << report.spread << " exceeds pi at dx = " << dx << "; use a smaller dx";
    throw Error(ErrorKind::StepTooLarge, msg.str());
  }
  const double s = std::sin(0.5 * report.c_te);
  return {16.0 * s * s / (dx * dx), QfiMethod::CteFd, dx};
}

HermitianMatrix local_generator(const UnitaryFamily& family, double x, double dx) {
  require_step(dx);
  const ComplexMatrix du = (family(x + 0.5 * dx).matrix() - family(x - 0.5 * dx).matrix()) / dx;
  const ComplexMatrix h = Complex(0.0, 1.0) * du * family(x).matrix().adjoint();
  const double residual = hermiticity_residual(h);
  if (residual > Tolerances::generator_hermiticity) {
    std::ostringstream msg;
    msg << "finite-difference generator has Hermiticity residual " << residual;
    throw Error(ErrorKind::DerivativeInaccurate, msg.str());
  }
  return HermitianMatrix::hermitize(h);
}

QfiResult channel_qfi_generator(const UnitaryFamily& family, double x, double dx) {
  const double spread = hermitian_eig(local_generator(family, x, dx)).spread();
  return {spread * spread, QfiMethod::Generator, dx};
}

Probe optimal_probe(const UnitaryFamily& family, double x, double dx) {
  const Spectrum spec = hermitian_eig(local_generator(family, x, dx));
  if (spec.spread() <= Tolerances::generator_min_spread)
    throw Error(ErrorKind::NoInformation, "local generator has zero spread; no probe carries information");
  const Eigen::Index last = spec.eigenvalues.size() - 1;
  const ComplexVector out = (spec.eigenvectors.col(0) + spec.eigenvectors.col(last)) / std::numbers::sqrt2;
  return Probe::normalized(family(x).matrix().adjoint() * out);
}

QfiResult pure_state_qfi(const UnitaryFamily& family, const Probe& probe, double x, double dx) {
  require_step(dx);
  const ComplexVector a = family(x - 0.5 * dx).matrix() * probe.amplitudes();
  const ComplexVector b = family(x + 0.5 * dx).matrix() * probe.amplitudes();
  // 1 - |<a|b>| = |a - w b|^2 / 2 with the phase w aligning b to a; the
  // difference form avoids cancellation when the overlap is close to 1.
  const Complex overlap = a.dot(b);
  const double mag = std::abs(overlap);
  const Complex w = mag > 0.0 ? std::conj(overlap) / mag : Complex(1.0, 0.0);
  const double gap = (a - w * b).squaredNorm();
  return {4.0 * gap / (dx * dx), QfiMethod::PureFd, dx};
}

QfiResult mixed_state_qfi_sld(const DensityMatrix& rho, const HermitianMatrix& drho) {
  if (rho.dim() != drho.dim()) throw Error(ErrorKind::DimensionMismatch, "rho and drho differ in dimension");
  const double tr = std::abs(drho.matrix().trace());
  if (tr > Tolerances::drho_trace) {
    std::ostringstream msg;
    msg << "derivative of a state must be traceless, |tr| = " << tr;
    throw Error(ErrorKind::InconsistentDerivative, msg.str());
  }
  const Spectrum spec = hermitian_eig(rho.matrix());
  const ComplexMatrix d = spec.eigenvectors.adjoint() * drho.matrix() * spec.eigenvectors;
  double value = 0.0;
  const Eigen::Index n = rho.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double denom = spec.eigenvalues(i) + spec.eigenvalues(j);
      if (denom > Tolerances::sld_pair_cutoff) value += 2.0 * std::norm(d(i, j)) / denom;
    }
  }
  return {value, QfiMethod::Sld, std::nullopt};
}

QfiResult bures_qfi_fd(const DensityFamily& family, double x, double dx) {
  require_step(dx);
  const double f = fidelity(family(x - 0.5 * dx), family(x + 0.5 * dx));
  return {8.0 * (1.0 - f) / (dx * dx), QfiMethod::BuresFd, dx};
}

double precision_bound(double qfi, long long repetitions) {
  if (repetitions < 1) throw Error(ErrorKind::InvalidArgument, "repetition count n must be >= 1");
  if (!(qfi >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Fisher information must be non-negative");
  if (qfi == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(static_cast<double>(repetitions) * qfi);
}

}  // namespace hamest
