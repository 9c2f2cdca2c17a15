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

#include "hamest/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hamest/constants.hpp"
#include "hamest/errors.hpp"

namespace hamest {

namespace {

bool all_finite(const ComplexMatrix& a) {
  return a.array().real().isFinite().all() && a.array().imag().isFinite().all();
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << " must be a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary G = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
// acting on columns p, q: a <- G^dagger a G, v <- v G.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double theta = 0.5 * std::atan2(2.0 * r, a(p, p).real() - a(q, q).real());
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex s_minus = s * std::conj(phase);  // s e^{-i phi}
  const Complex s_plus = s * phase;              // s e^{+i phi}

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + s_minus * akq;
    a(k, q) = -s_plus * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + s_plus * aqk;
    a(q, k) = -s_minus * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp + s_minus * vkq;
    v(k, q) = -s_plus * vkp + c * vkq;
  }
}

}  // namespace

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& a) {
  return max_abs(a - a.adjoint());
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) return false;
  const ComplexMatrix defect = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(defect) <= tol;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix a, double tol) : m_(std::move(a)) {
  require_square(m_, "Hermitian matrix");
  if (!all_finite(m_)) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double residual = hermiticity_residual(m_);
  if (residual > tol) {
    std::ostringstream msg;
    msg << "max |A - A^dagger| = " << residual << " exceeds " << tol;
    throw Error(ErrorKind::NotHermitian, msg.str());
  }
}

HermitianMatrix HermitianMatrix::hermitize(const ComplexMatrix& a) {
  require_square(a, "Hermitian matrix");
  return HermitianMatrix(Trusted{}, 0.5 * (a + a.adjoint()));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix u, double tol) : m_(std::move(u)) {
  require_square(m_, "unitary matrix");
  if (!all_finite(m_) || !is_unitary(m_, tol)) {
    std::ostringstream msg;
    msg << "max |U^dagger U - I| exceeds " << tol;
    throw Error(ErrorKind::NotUnitary, msg.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return trusted(ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "unitary product of different dimensions");
  return UnitaryMatrix::trusted(a.matrix() * b.matrix());
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : m_(std::move(rho)) {
  require_square(m_, "density matrix");
  if (!all_finite(m_)) throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
  const double residual = hermiticity_residual(m_);
  if (residual > Tolerances::hermitian) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian (residual " << residual << ")";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > Tolerances::trace) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr.real() << " differs from 1";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  const Spectrum spec = hermitian_eig(m_);
  if (spec.min() < Tolerances::density_min_eigenvalue) {
    std::ostringstream msg;
    msg << "density matrix has eigenvalue " << spec.min();
    throw Error(ErrorKind::InvalidState, msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw Error(ErrorKind::InvalidState, "state vector is not normalised");
  return DensityMatrix(psi * psi.adjoint());
}

Spectrum hermitian_eig(const HermitianMatrix& a) { return hermitian_eig(a.matrix()); }

Spectrum hermitian_eig(const ComplexMatrix& input) {
  require_square(input, "eigensolver input");
  const Eigen::Index n = input.rows();
  ComplexMatrix a = 0.5 * (input + input.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double scale = a.norm();
  const double threshold = Tolerances::jacobi_relative * scale;
  int sweep = 0;
  for (; sweep < Tolerances::jacobi_max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }
  if (sweep == Tolerances::jacobi_max_sweeps && off_diagonal_norm(a) > threshold) {
    std::ostringstream msg;
    msg << "Jacobi did not converge after " << sweep << " sweeps, off-diagonal residual "
        << off_diagonal_norm(a);
    throw Error(ErrorKind::NonConvergence, msg.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });

  Spectrum out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

UnitaryMatrix expm_i(const HermitianMatrix& h, double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "evolution time must be finite");
  const Spectrum spec = hermitian_eig(h);
  ComplexVector phases(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -spec.eigenvalues(k) * t);
  return UnitaryMatrix::trusted(spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint());
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  const Spectrum spec = hermitian_eig(a);
  if (spec.min() < Tolerances::psd_reject) {
    std::ostringstream msg;
    msg << "matrix is not positive semidefinite (eigenvalue " << spec.min() << ")";
    throw Error(ErrorKind::InvalidState, msg.str());
  }
  RealVector roots = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return HermitianMatrix::hermitize(spec.eigenvectors * roots.cast<Complex>().asDiagonal() *
                                    spec.eigenvectors.adjoint());
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw Error(ErrorKind::DimensionMismatch, "fidelity of states of different dimension");
  const ComplexMatrix s = psd_sqrt(HermitianMatrix::hermitize(rho1.matrix())).matrix();
  const Spectrum inner = hermitian_eig(ComplexMatrix(s * rho2.matrix() * s));
  double f = 0.0;
  for (Eigen::Index k = 0; k < inner.eigenvalues.size(); ++k) f += std::sqrt(std::max(0.0, inner.eigenvalues(k)));
  return std::clamp(f, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * fidelity(rho1, rho2)));
}

ComplexMatrix sigma1() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix sigma2() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix sigma3() {
  ComplexMatrix m(2, 2);
  m << -1.0, 0.0, 0.0, 1.0;
  return m;
}

}  // namespace hamest
