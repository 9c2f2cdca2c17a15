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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hamest/errors.hpp"
#include "hamest/matrix.hpp"
#include "random_ops.hpp"

using namespace hamest;
using hamest::testing::Rng;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (auto x : values) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("hermitian_eig: Pauli sigma1") {
  const Spectrum s = hermitian_eig(HermitianMatrix(sigma1()));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-14));
  ComplexVector plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  plus /= std::numbers::sqrt2;
  minus /= std::numbers::sqrt2;
  // eigenvectors are fixed up to a phase
  CHECK(std::abs(plus.dot(s.eigenvectors.col(0))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(minus.dot(s.eigenvectors.col(1))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: diagonal input sorts descending") {
  const Spectrum s = hermitian_eig(HermitianMatrix(diag({3.0, 1.0, 2.0})));
  CHECK(s.eigenvalues(0) == 3.0);
  CHECK(s.eigenvalues(1) == 2.0);
  CHECK(s.eigenvalues(2) == 1.0);
}

TEST_CASE("hermitian_eig: reconstruction, orthonormality and agreement with a reference solver") {
  Rng rng(11);
  for (Eigen::Index d : {2, 3, 4, 6, 8}) {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = testing::random_hermitian(rng, d, 2.0);
      const Spectrum s = hermitian_eig(HermitianMatrix(a));
      const ComplexMatrix& v = s.eigenvectors;
      const ComplexMatrix rebuilt = v * s.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
      CHECK(max_abs(rebuilt - a) < 1e-10);
      CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(d, d)) < 1e-10);
      for (Eigen::Index k = 0; k + 1 < d; ++k) CHECK(s.eigenvalues(k) >= s.eigenvalues(k + 1));
      const RealVector ref = testing::reference_eigenvalues(a);
      for (Eigen::Index k = 0; k < d; ++k) CHECK(std::abs(s.eigenvalues(k) - ref(d - 1 - k)) < 1e-10);
    }
  }
}

TEST_CASE("hermitian_eig: shift by a multiple of the identity shifts every eigenvalue") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = testing::random_hermitian(rng, 4);
    const double c = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
    const Spectrum s0 = hermitian_eig(HermitianMatrix(a));
    const Spectrum s1 = hermitian_eig(HermitianMatrix(ComplexMatrix(a + c * ComplexMatrix::Identity(4, 4))));
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(std::abs(s1.eigenvalues(k) - s0.eigenvalues(k) - c) < 1e-10);
  }
}

TEST_CASE("hermitian_eig: degenerate and zero matrices") {
  const Spectrum z = hermitian_eig(HermitianMatrix(ComplexMatrix::Zero(3, 3)));
  CHECK(z.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
  const Spectrum id = hermitian_eig(HermitianMatrix(ComplexMatrix::Identity(4, 4)));
  CHECK(id.spread() == 0.0);
}

TEST_CASE("HermitianMatrix and UnitaryMatrix reject invalid input") {
  ComplexMatrix a(2, 2);
  a << 0.0, 1.0, 0.5, 0.0;
  CHECK_THROWS_AS(HermitianMatrix{a}, Error);
  CHECK_THROWS_AS(UnitaryMatrix(ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))), Error);
  CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), Error);
  try {
    HermitianMatrix h{a};
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("expm_i: closed forms") {
  const UnitaryMatrix zero = expm_i(HermitianMatrix(ComplexMatrix::Zero(3, 3)), 2.7);
  CHECK(max_abs(zero.matrix() - ComplexMatrix::Identity(3, 3)) < 1e-15);

  const double theta = 0.83;
  const UnitaryMatrix z = expm_i(HermitianMatrix(sigma3()), theta);
  CHECK(max_abs(z.matrix() - diag({std::polar(1.0, theta), std::polar(1.0, -theta)})) < 1e-14);

  const UnitaryMatrix x = expm_i(HermitianMatrix(sigma1()), std::numbers::pi / 2);
  CHECK(max_abs(x.matrix() - ComplexMatrix(Complex(0.0, -1.0) * sigma1())) < 1e-14);

  // e^{-i theta (n . sigma)} = cos(theta) I - i sin(theta) n . sigma
  const double n1 = 0.48, n2 = -0.6, n3 = std::sqrt(1.0 - 0.48 * 0.48 - 0.36);
  const ComplexMatrix ns = n1 * sigma1() + n2 * sigma2() + n3 * sigma3();
  CHECK(max_abs(expm_i(HermitianMatrix::hermitize(ns), 1.1).matrix() -
                testing::pauli_exponential(1.1, n1, n2, n3)) < 1e-14);
}

TEST_CASE("expm_i: agrees with a Taylor series, is unitary and composes additively") {
  Rng rng(13);
  for (Eigen::Index d : {2, 3, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      const HermitianMatrix h(testing::random_hermitian(rng, d));
      const UnitaryMatrix u = expm_i(h, 1.3);
      CHECK(is_unitary(u.matrix(), 1e-10));
      CHECK(max_abs(u.matrix() - testing::taylor_expm(h.matrix(), 1.3)) < 1e-10);
      const double s = 0.37, t = -1.21;
      CHECK(max_abs(expm_i(h, s + t).matrix() - expm_i(h, s).matrix() * expm_i(h, t).matrix()) < 1e-10);
    }
  }
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(ComplexMatrix::Identity(3, 3), 1e-10));
  CHECK_FALSE(is_unitary(2.0 * ComplexMatrix::Identity(3, 3), 1e-10));
  CHECK_FALSE(is_unitary(ComplexMatrix(2, 3), 1e-10));
}

TEST_CASE("psd_sqrt") {
  CHECK(max_abs(psd_sqrt(HermitianMatrix(ComplexMatrix::Identity(3, 3))).matrix() - ComplexMatrix::Identity(3, 3)) <
        1e-15);
  const ComplexMatrix r = psd_sqrt(HermitianMatrix(ComplexMatrix(diag({4.0 / 13.0, 9.0 / 13.0})))).matrix();
  CHECK(max_abs(r - ComplexMatrix(diag({2.0, 3.0}) / std::sqrt(13.0))) < 1e-15);

  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix rho = testing::random_density(rng, 4);
    const ComplexMatrix s = psd_sqrt(HermitianMatrix(rho)).matrix();
    CHECK(max_abs(s * s - rho) < 1e-9);
  }

  // rounding-level negatives clamp; genuinely negative input is rejected
  CHECK_NOTHROW(psd_sqrt(HermitianMatrix(ComplexMatrix(diag({1.0, -1e-8})))));
  try {
    psd_sqrt(HermitianMatrix(ComplexMatrix(diag({1.0, -1e-5}))));
    FAIL("expected InvalidState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidState);
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(diag({0.6, 0.6}))), Error);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(diag({1.2, -0.2}))), Error);
  CHECK_NOTHROW(DensityMatrix(ComplexMatrix(diag({0.25, 0.75}))));
}

TEST_CASE("fidelity: identical, pure-state overlap, maximally mixed") {
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho(testing::random_density(rng, 3));
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-9));

    const ComplexVector psi = testing::random_pure(rng, 3);
    const ComplexVector phi = testing::random_pure(rng, 3);
    CHECK(std::abs(fidelity(DensityMatrix::pure(psi), DensityMatrix::pure(phi)) - std::abs(psi.dot(phi))) < 1e-7);
  }
  ComplexVector zero(2);
  zero << 1.0, 0.0;
  const DensityMatrix mixed(ComplexMatrix(0.5 * ComplexMatrix::Identity(2, 2)));
  CHECK(fidelity(mixed, DensityMatrix::pure(zero)) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("fidelity: symmetric and unitarily invariant") {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = testing::random_density(rng, 3);
    const ComplexMatrix b = testing::random_density(rng, 3);
    const ComplexMatrix u = testing::haar_unitary(rng, 3);
    const double f = fidelity(DensityMatrix(a), DensityMatrix(b));
    CHECK(std::abs(f - fidelity(DensityMatrix(b), DensityMatrix(a))) < 1e-9);
    const ComplexMatrix ua = u * a * u.adjoint();
    const ComplexMatrix ub = u * b * u.adjoint();
    CHECK(std::abs(f - fidelity(DensityMatrix(0.5 * (ua + ua.adjoint())), DensityMatrix(0.5 * (ub + ub.adjoint())))) <
          1e-9);
  }
}

TEST_CASE("bures_distance: closed forms and triangle inequality") {
  ComplexVector zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  CHECK(bures_distance(DensityMatrix::pure(zero), DensityMatrix::pure(zero)) < 1e-7);
  CHECK(bures_distance(DensityMatrix::pure(zero), DensityMatrix::pure(one)) ==
        doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));

  for (double theta : {0.3, 1.0, 2.2, 3.0}) {
    ComplexVector tilted(2);
    tilted << std::cos(theta / 2), std::sin(theta / 2);
    const double expected = std::sqrt(2.0 - 2.0 * std::cos(theta / 2));
    CHECK(bures_distance(DensityMatrix::pure(zero), DensityMatrix::pure(tilted)) ==
          doctest::Approx(expected).epsilon(1e-7));
  }

  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix a(testing::random_density(rng, 2));
    const DensityMatrix b(testing::random_density(rng, 2));
    const DensityMatrix c(testing::random_density(rng, 2));
    CHECK(bures_distance(a, c) <= bures_distance(a, b) + bures_distance(b, c) + 1e-9);
  }
}
