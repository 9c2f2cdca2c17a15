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

// Small dense complex matrices (d <= 8 in practice) and the kernels built on
// them: Hermitian eigendecomposition, unitary exponential, PSD square root,
// fidelity and Bures distance.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hamest/constants.hpp"

namespace hamest {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// max_ij |A_ij|
double max_abs(const ComplexMatrix& a);

/// max_ij |(A - A^dagger)_ij|
double hermiticity_residual(const ComplexMatrix& a);

/// max_ij |(M^dagger M - I)_ij|; also false for non-square input.
bool is_unitary(const ComplexMatrix& m, double tol);

class HermitianMatrix {
 public:
  /// Validates A = A^dagger within `tol` and finite entries.
  explicit HermitianMatrix(ComplexMatrix a, double tol = Tolerances::hermitian);

  /// (A + A^dagger)/2 with no check; for results that are Hermitian up to rounding.
  static HermitianMatrix hermitize(const ComplexMatrix& a);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, ComplexMatrix a) : m_(std::move(a)) {}
  ComplexMatrix m_;
};

class UnitaryMatrix {
 public:
  /// Validates U^dagger U = I within `tol`.
  explicit UnitaryMatrix(ComplexMatrix u, double tol = Tolerances::unitary);

  /// Wraps a product or inverse of unitaries without re-checking.
  static UnitaryMatrix trusted(ComplexMatrix u) { return UnitaryMatrix(Trusted{}, std::move(u)); }
  static UnitaryMatrix identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  UnitaryMatrix adjoint() const { return trusted(m_.adjoint()); }

 private:
  struct Trusted {};
  UnitaryMatrix(Trusted, ComplexMatrix u) : m_(std::move(u)) {}
  ComplexMatrix m_;
};

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and eigenvalues >= -1e-10.
  explicit DensityMatrix(ComplexMatrix rho);

  /// |psi><psi| for a normalised vector.
  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  double purity() const { return (m_ * m_).trace().real(); }

 private:
  ComplexMatrix m_;
};

/// Eigenvalues sorted descending, eigenvectors as matching orthonormal columns.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  double max() const { return eigenvalues(0); }
  double min() const { return eigenvalues(eigenvalues.size() - 1); }
  double spread() const { return max() - min(); }
};

/// Cyclic complex Jacobi. Throws NonConvergence after the sweep cap.
Spectrum hermitian_eig(const HermitianMatrix& a);

/// Same algorithm on a matrix the caller guarantees to be Hermitian.
Spectrum hermitian_eig(const ComplexMatrix& a);

/// e^{-iHt} via the eigendecomposition of H.
UnitaryMatrix expm_i(const HermitianMatrix& h, double t);

/// Principal square root of a PSD matrix; eigenvalues in [-1e-6, 0) clamp to 0.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

/// Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)), clipped to [0, 1].
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// sqrt(2 - 2 F).
double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Pauli matrices. sigma3 follows the diag(-1, 1) sign convention used by the
/// direction-field family throughout this library.
ComplexMatrix sigma1();
ComplexMatrix sigma2();
ComplexMatrix sigma3();

}  // namespace hamest
