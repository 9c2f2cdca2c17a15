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

#pragma once

namespace hamest {

/// Numerical tolerances shared by the type invariants, the kernels and the
/// tests. Everything that compares against a threshold reads it from here.
struct Tolerances {
  /// max |A - A^dagger| entry for a Hermitian matrix
  static constexpr double hermitian = 1e-12;
  /// max |U^dagger U - I| entry for a unitary matrix
  static constexpr double unitary = 1e-10;
  /// |tr(rho) - 1| for a density matrix
  static constexpr double trace = 1e-10;
  /// smallest admissible eigenvalue of a density matrix
  static constexpr double density_min_eigenvalue = -1e-10;
  /// eigenvalues below this are rejected by psd_sqrt; above it they clamp to 0
  static constexpr double psd_reject = -1e-6;

  /// Jacobi stops when off(A)_F < jacobi_relative * |A|_F
  static constexpr double jacobi_relative = 1e-13;
  static constexpr int jacobi_max_sweeps = 100;

  /// eigenvalues of (U + U^dagger)/2 closer than this share an eigenspace
  static constexpr double angle_degeneracy = 1e-8;

  /// SLD pairs with p_i + p_j at or below this contribute nothing
  static constexpr double sld_pair_cutoff = 1e-10;
  /// |tr(d rho)| above this means the derivative is not a state derivative
  static constexpr double drho_trace = 1e-8;
  /// |h - h^dagger| above this means the finite-difference generator is bad
  static constexpr double generator_hermiticity = 1e-6;
  /// a generator whose spread is below this carries no information
  static constexpr double generator_min_spread = 1e-12;

  /// Kraus completeness sum K^dagger K = I
  static constexpr double kraus_completeness = 1e-10;

  /// probe normalisation
  static constexpr double probe_norm = 1e-12;
};

/// Default finite-difference step; evaluation points are x -/+ dx/2.
inline constexpr double kDefaultDx = 1e-5;

/// Gain-interval search defaults.
inline constexpr double kGainSearchMin = -3.0;
inline constexpr double kGainSearchMax = 3.0;
inline constexpr int kGainPrescanPoints = 601;
inline constexpr double kGainBisectionTol = 1e-4;

}  // namespace hamest
