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

#include "hamest/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hamest/constants.hpp"
#include "hamest/errors.hpp"

namespace hamest {

namespace {

double principal_angle(double cos_part, double sin_part) {
  // eigenvalue e^{-i theta} = cos(theta) - i sin(theta)
  double theta = -std::atan2(sin_part, cos_part);
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  return theta;
}

}  // namespace

UnitarySpectrum unitary_eig(const UnitaryMatrix& u) {
  const ComplexMatrix& m = u.matrix();
  const Eigen::Index n = m.rows();
  const ComplexMatrix re_part = 0.5 * (m + m.adjoint());
  const ComplexMatrix im_part = (m - m.adjoint()) / Complex(0.0, 2.0);

  const Spectrum cos_spec = hermitian_eig(re_part);
  ComplexMatrix vecs = cos_spec.eigenvectors;

  // Within each (near-)degenerate eigenspace of the real part, the imaginary
  // part separates the eigenvectors of U.
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n &&
           cos_spec.eigenvalues(stop - 1) - cos_spec.eigenvalues(stop) <= Tolerances::angle_degeneracy)
      ++stop;
    const Eigen::Index size = stop - start;
    if (size > 1) {
      const ComplexMatrix block = vecs.middleCols(start, size);
      const ComplexMatrix restricted = block.adjoint() * im_part * block;
      const Spectrum sin_spec = hermitian_eig(restricted);
      vecs.middleCols(start, size) = block * sin_spec.eigenvectors;
    }
    start = stop;
  }

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto v = vecs.col(k);
    const double c = (v.adjoint() * re_part * v)(0, 0).real();
    const double s = (v.adjoint() * im_part * v)(0, 0).real();
    raw[static_cast<std::size_t>(k)] = principal_angle(c, s);
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return raw[i] > raw[j]; });

  UnitarySpectrum out;
  out.angles.angles.resize(raw.size());
  out.eigenvectors.resize(n, n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.angles.angles[k] = raw[order[k]];
    out.eigenvectors.col(static_cast<Eigen::Index>(k)) = vecs.col(static_cast<Eigen::Index>(order[k]));
  }
  return out;
}

EigenAngles eigen_angles(const UnitaryMatrix& u) { return unitary_eig(u).angles; }

EigenAngles eigen_angles(const ComplexMatrix& u) { return eigen_angles(UnitaryMatrix(u)); }

SpreadReport c_te(const UnitaryMatrix& u) {
  const EigenAngles angles = eigen_angles(u);
  SpreadReport report;
  report.spread = angles.max() - angles.min();
  report.c_te = 0.5 * report.spread;
  report.wraparound = report.spread > std::numbers::pi;
  return report;
}

SpreadReport c_te(const ComplexMatrix& u) { return c_te(UnitaryMatrix(u)); }

double min_fidelity_over_inputs(const UnitaryMatrix& u) {
  const SpreadReport report = c_te(u);
  if (report.wraparound) {
    std::ostringstream msg;
    msg << "requires theta_max - theta_min <= pi, got spread " << report.spread;
    throw Error(ErrorKind::OutOfValidity, msg.str());
  }
  return std::cos(report.c_te);
}

ComplexVector extremal_superposition(const UnitaryMatrix& u) {
  const UnitarySpectrum spec = unitary_eig(u);
  const auto& a = spec.angles.angles;
  std::size_t lowest = a.size() - 1;
  while (lowest > 0 && a[lowest - 1] - a.back() <= Tolerances::angle_degeneracy) --lowest;
  if (lowest == 0) return spec.eigenvectors.col(0);
  return (spec.eigenvectors.col(0) + spec.eigenvectors.col(static_cast<Eigen::Index>(lowest))) /
         std::numbers::sqrt2;
}

}  // namespace hamest
