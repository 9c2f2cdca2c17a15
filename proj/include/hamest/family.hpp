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

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hamest/matrix.hpp"

namespace hamest {

/// H(x) = x * H
struct Multiplicative {
  HermitianMatrix h;
};

/// H(x) = B (cos x sigma1 + sin x sigma3), sigma3 = diag(-1, 1)
struct DirectionField {
  double b;
};

/// One harmonic k of a trigonometric family: cos_part cos(kx) + sin_part sin(kx).
struct Harmonic {
  HermitianMatrix cos_part;
  HermitianMatrix sin_part;
};

/// H(x) = A0 + sum_k [A_k cos(kx) + B_k sin(kx)], harmonics[k-1] holds order k.
struct TrigMatrix {
  HermitianMatrix constant;
  std::vector<Harmonic> harmonics;
};

/// A parameter-indexed Hermitian family x -> H(x). Immutable once built.
class HamiltonianFamily {
 public:
  using Payload = std::variant<Multiplicative, DirectionField, TrigMatrix>;

  static HamiltonianFamily multiplicative(HermitianMatrix h);
  /// Throws InvalidArgument unless b > 0.
  static HamiltonianFamily direction_field(double b);
  /// Throws DimensionMismatch if coefficient sizes disagree.
  static HamiltonianFamily trig_matrix(HermitianMatrix constant, std::vector<Harmonic> harmonics);

  Eigen::Index dim() const noexcept { return dim_; }
  const Payload& payload() const noexcept { return payload_; }
  std::string kind_name() const;

  HermitianMatrix evaluate(double x) const;
  /// Analytic dH/dx.
  HermitianMatrix derivative(double x) const;
  /// e^{-i H(x) t}; t must be >= 0.
  UnitaryMatrix unitary_at(double x, double t) const;

 private:
  HamiltonianFamily(Payload payload, Eigen::Index dim) : payload_(std::move(payload)), dim_(dim) {}

  Payload payload_;
  Eigen::Index dim_;
};

struct EvolutionParams {
  double x = 1.0;
  double total_time = 1.0;
  double segment_time = 1.0;
  double dx = 1e-5;

  /// Throws InvalidArgument naming the first bad field.
  void validate() const;
};

/// 4 sin^2(BT): best Fisher information of the direction field without controls.
double direction_field_qfi_closed_form(double b, double total_time);

/// cos B' = cos^2(BT) + cos(dx) sin^2(BT), where e^{+-iB'} are the eigenvalues
/// of U_x^dagger U_{x+dx} for the direction field.
double cos_bprime(double b, double total_time, double dx);

/// 4 m^2 sin^2(BT/m): direction field under m segments with aligned controls.
double direction_field_feedback_closed_form(double b, double total_time, int segments);

/// T^2 (lambda_max(dH) - lambda_min(dH))^2, the large-segment limit of the
/// controlled Fisher information.
double universal_qfi(const HamiltonianFamily& family, double x, double total_time);

/// Matrices are nested arrays of [re, im] pairs; a bare number is a real entry.
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// {"kind": "direction_field", "B": 1} | {"kind": "multiplicative", "H": M} |
/// {"kind": "trig_matrix", "A0": M, "harmonics": [{"cos": M, "sin": M}, ...]}.
/// Non-Hermitian coefficients are reported with their path (e.g. harmonics[1].sin).
HamiltonianFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const HamiltonianFamily& family);

}  // namespace hamest
