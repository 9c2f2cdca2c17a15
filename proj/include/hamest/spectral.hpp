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

// Eigen-angles of a unitary and the half-spread functional built on them.
//
// An eigenvalue e^{-i theta} of U maps to the angle theta in (-pi, pi]. The
// half-spread c_te(U) = (theta_max - theta_min) / 2 controls the smallest
// fidelity any input state can keep under U, and through it the largest
// Fisher information a unitary channel can imprint.

#pragma once

#include <vector>

#include "hamest/matrix.hpp"

namespace hamest {

struct EigenAngles {
  /// sorted descending, each in (-pi, pi]
  std::vector<double> angles;

  std::size_t dim() const noexcept { return angles.size(); }
  double max() const { return angles.front(); }
  double min() const { return angles.back(); }
};

/// Angles together with a matching orthonormal set of eigenvectors.
struct UnitarySpectrum {
  EigenAngles angles;
  ComplexMatrix eigenvectors;
};

struct SpreadReport {
  double c_te = 0.0;
  double spread = 0.0;
  bool wraparound = false;  ///< spread > pi; the (-pi, pi] branch no longer describes a rotation
};

/// Joint diagonalisation of (U + U^dagger)/2 and (U - U^dagger)/(2i).
UnitarySpectrum unitary_eig(const UnitaryMatrix& u);

EigenAngles eigen_angles(const UnitaryMatrix& u);
/// Checks unitarity first (NotUnitary).
EigenAngles eigen_angles(const ComplexMatrix& u);

SpreadReport c_te(const UnitaryMatrix& u);
SpreadReport c_te(const ComplexMatrix& u);

/// cos(c_te(U)); the minimum over input states of F(rho, U rho U^dagger).
/// Throws OutOfValidity when theta_max - theta_min > pi.
double min_fidelity_over_inputs(const UnitaryMatrix& u);

/// (v_max + v_min)/sqrt(2) from the extremal eigenvectors of U; the input
/// that realises min_fidelity_over_inputs.
ComplexVector extremal_superposition(const UnitaryMatrix& u);

}  // namespace hamest
