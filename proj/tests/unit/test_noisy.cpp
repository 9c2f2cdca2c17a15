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
#include <cstring>
#include <numbers>

#include <doctest.h>

#include "hamest/errors.hpp"
#include "hamest/noisy.hpp"
#include "random_ops.hpp"

using namespace hamest;
using hamest::testing::Rng;

namespace {

const double kEta = std::pow(0.8, 0.2);

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hamest::Error");
  return ErrorKind::InvalidArgument;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

FeedbackSchedule random_schedule(Rng& rng, int m, double total_time) {
  std::vector<UnitaryMatrix> controls;
  for (int k = 0; k < m; ++k) controls.emplace_back(testing::haar_unitary(rng, 2));
  return FeedbackSchedule(m, total_time, std::move(controls));
}

FeedbackSchedule fig3_schedule(double beta) {
  return optimal_schedule(HamiltonianFamily::direction_field(1.0), Estimate{1.0 + beta}, 5, 1.0);
}

ProbeSearch quick_search() { return {16, 8, 3, 1e-7}; }

}  // namespace

TEST_CASE("KrausChannel validation and superoperator") {
  CHECK(kind_of([] { KrausChannel c({ComplexMatrix(2.0 * ComplexMatrix::Identity(2, 2))}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] {
          KrausChannel c({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3)});
        }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { KrausChannel c({}); }) == ErrorKind::InvalidArgument);

  Rng rng(61);
  const auto f = HamiltonianFamily::direction_field(1.0);
  const KrausChannel ch = dephasing_after_unitary(f, 0.7, 0.3, 0.6);
  const ComplexMatrix s = ch.superoperator();
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rho = testing::random_density(rng, 2);
    const ComplexMatrix direct = apply_channel(ch, DensityMatrix(rho)).matrix();
    const ComplexVector v = s * Eigen::Map<const ComplexVector>(rho.data(), 4);
    CHECK(max_abs(Eigen::Map<const ComplexMatrix>(v.data(), 2, 2) - direct) < 1e-14);
  }
}

TEST_CASE("dephasing_after_unitary: examples") {
  CHECK(kEta == doctest::Approx(0.9563524997900368).epsilon(1e-15));

  const auto f = HamiltonianFamily::direction_field(1.0);
  CHECK(dephasing_after_unitary(f, 1.0, 0.2, 1.0).ops().size() == 1);
  const KrausChannel two = dephasing_after_unitary(f, 1.0, 0.2, kEta);
  REQUIRE(two.ops().size() == 2);
  const ComplexMatrix u = f.unitary_at(1.0, 0.2).matrix();
  CHECK(max_abs(two.ops()[0] - std::sqrt((1.0 + kEta) / 2.0) * u) < 1e-15);
  CHECK(max_abs(two.ops()[1] - std::sqrt((1.0 - kEta) / 2.0) * sigma3() * u) < 1e-15);

  Rng rng(62);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto fam = testing::random_trig_family(rng, 2);
    const KrausChannel ch = dephasing_after_unitary(fam, 4.0 * u01(rng) - 2.0, u01(rng), u01(rng));
    ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
    for (const auto& k : ch.ops()) sum += k.adjoint() * k;
    CHECK(max_abs(sum - ComplexMatrix::Identity(2, 2)) < 1e-12);
  }

  CHECK(kind_of([&] { dephasing_after_unitary(f, 1.0, 0.2, 1.5); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { dephasing_after_unitary(f, 1.0, 0.2, -0.1); }) == ErrorKind::InvalidArgument);
  const auto qutrit = HamiltonianFamily::multiplicative(HermitianMatrix(ComplexMatrix::Identity(3, 3)));
  CHECK(kind_of([&] { dephasing_after_unitary(qutrit, 1.0, 0.2, 0.5); }) == ErrorKind::UnsupportedDimension);
}

TEST_CASE("apply_channel: examples") {
  Rng rng(63);
  const auto f = HamiltonianFamily::direction_field(1.0);
  const KrausChannel still = dephasing_after_unitary(f, 1.0, 0.0, 1.0);
  const KrausChannel dephase = dephasing_after_unitary(f, 1.0, 0.0, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho(testing::random_density(rng, 2));
    CHECK(max_abs(apply_channel(still, rho).matrix() - rho.matrix()) < 1e-15);
    const DensityMatrix out = apply_channel(dephase, rho);
    CHECK(std::abs(out.matrix()(0, 1)) < 1e-15);
    CHECK(std::abs(out.matrix()(0, 0) - rho.matrix()(0, 0)) < 1e-15);
    const DensityMatrix general = apply_channel(dephasing_after_unitary(f, 0.3, 0.8, 0.4), rho);
    CHECK(std::abs(general.matrix().trace() - 1.0) < 1e-10);
  }
  const auto qubit_state = DensityMatrix(ComplexMatrix(0.5 * ComplexMatrix::Identity(2, 2)));
  CHECK_NOTHROW(apply_channel(still, qubit_state));
}

TEST_CASE("evolve_noisy: unitary limit matches total_unitary") {
  Rng rng(64);
  const auto f = HamiltonianFamily::direction_field(1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const FeedbackSchedule s = random_schedule(rng, 1 + trial % 6, 1.0);
    const Probe p(testing::random_pure(rng, 2));
    const ComplexVector out = total_unitary(f, 1.0, s).matrix() * p.amplitudes();
    CHECK(max_abs(evolve_noisy(f, 1.0, s, 1.0, p).matrix() - out * out.adjoint()) < 1e-10);
  }

  // optimal controls at the true value: U_t applied once, the rest telescopes
  const Probe plus = Probe::bloch(std::numbers::pi / 2, 0.0);
  const ComplexVector once = f.unitary_at(1.0, 0.2).matrix() * plus.amplitudes();
  CHECK(max_abs(evolve_noisy(f, 1.0, fig3_schedule(0.0), 1.0, plus).matrix() - once * once.adjoint()) < 1e-10);

  const ComplexVector whole = f.unitary_at(1.0, 1.0).matrix() * plus.amplitudes();
  CHECK(max_abs(evolve_noisy(f, 1.0, FeedbackSchedule::identity(1, 1.0, 2), 1.0, plus).matrix() -
                whole * whole.adjoint()) < 1e-10);
}

TEST_CASE("evolve_noisy: dephasing makes the output mixed") {
  const auto f = HamiltonianFamily::direction_field(1.0);
  const Probe plus = Probe::bloch(std::numbers::pi / 2, 0.0);
  CHECK(purity(evolve_noisy(f, 1.0, fig3_schedule(0.0), kEta, plus)) < 1.0 - 1e-6);
  CHECK(kind_of([&] { evolve_noisy(f, 1.0, fig3_schedule(0.0), kEta, Probe(ComplexVector::Unit(3, 0))); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("property: CPTP through ten noisy segments, purity never grows") {
  Rng rng(65);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = testing::random_trig_family(rng, 2);
    const double x = 2.0 * u01(rng) - 1.0;
    const double eta = u01(rng);
    const FeedbackSchedule s = random_schedule(rng, 10, 2.0);
    const Probe p(testing::random_pure(rng, 2));

    const DensityMatrix out = evolve_noisy(f, x, s, eta, p);
    CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-9);
    CHECK(hermiticity_residual(out.matrix()) < 1e-9);
    CHECK(testing::reference_eigenvalues(out.matrix())(0) > -1e-9);

    // segment by segment in the same time order as evolve_noisy
    const KrausChannel segment = dephasing_after_unitary(f, x, s.segment_time(), eta);
    ComplexMatrix rho = p.density().matrix();
    double previous = 1.0;
    for (int k = 9; k >= 0; --k) {
      const ComplexMatrix& c = s.controls()[static_cast<std::size_t>(k)].matrix();
      const ComplexMatrix turned = c * rho * c.adjoint();
      rho = apply_channel(segment, DensityMatrix(0.5 * (turned + turned.adjoint()))).matrix();
      const double now = (rho * rho).trace().real();
      CHECK(now <= previous + 1e-12);
      previous = now;
    }
    CHECK(max_abs(rho - out.matrix()) < 1e-12);
  }
}

TEST_CASE("noisy_qfi: examples") {
  const auto f = HamiltonianFamily::direction_field(1.0);
  Rng rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    const FeedbackSchedule s = random_schedule(rng, 1 + trial % 5, 1.0);
    const Probe p(testing::random_pure(rng, 2));
    const double unitary = pure_state_qfi(controlled_family(f, s), p, 1.0).value;
    const double noisy = noisy_qfi(f, 1.0, s, 1.0, p).value;
    CHECK(std::abs(noisy - unitary) <= 1e-5 * std::max(unitary, 1e-2));
  }

  const auto constant = HamiltonianFamily::multiplicative(HermitianMatrix(ComplexMatrix::Zero(2, 2)));
  CHECK(noisy_qfi(constant, 1.0, fig3_schedule(0.0), kEta, Probe::bloch(1.0, 0.5)).value < 1e-12);

  // Bures-route oracle at the Fig. 3 settings
  const FeedbackSchedule s = fig3_schedule(0.0);
  for (const Probe& p : {Probe::bloch(std::numbers::pi / 2, 0.0), Probe::bloch(1.1, 2.3)}) {
    const double sld = noisy_qfi(f, 1.0, s, kEta, p).value;
    const DensityFamily fam = [&](double x) { return evolve_noisy(f, x, s, kEta, p); };
    CHECK(rel(sld, bures_qfi_fd(fam, 1.0, 1e-3).value) < 1e-4);
  }
  CHECK_THROWS_AS(noisy_qfi(f, 1.0, s, kEta, Probe::bloch(1.0, 0.0), 0.0), Error);
}

TEST_CASE("noisy_qfi: invariant under the global phase of the probe") {
  const auto f = HamiltonianFamily::direction_field(1.0);
  const Probe p = Probe::bloch(0.9, 1.7);
  const Probe q(std::polar(1.0, 0.77) * p.amplitudes());
  const FeedbackSchedule s = fig3_schedule(0.3);
  CHECK(rel(noisy_qfi(f, 1.0, s, kEta, q).value, noisy_qfi(f, 1.0, s, kEta, p).value) < 1e-10);
}

TEST_CASE("NoisyProcess agrees with evolve_noisy and noisy_qfi") {
  Rng rng(67);
  const auto f = HamiltonianFamily::direction_field(1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const FeedbackSchedule s = random_schedule(rng, 1 + trial % 6, 1.0);
    const double eta = std::uniform_real_distribution<double>(0.5, 1.0)(rng);
    const NoisyProcess process(f, 1.0, s, eta, kDefaultDx);
    const Probe p(testing::random_pure(rng, 2));
    CHECK(max_abs(process.output(p).matrix() - evolve_noisy(f, 1.0, s, eta, p).matrix()) < 1e-12);
    const double slow = noisy_qfi(f, 1.0, s, eta, p).value;
    CHECK(std::abs(process.qfi(p) - slow) <= 1e-6 * std::max(slow, 1e-2));
  }
}

TEST_CASE("max_noisy_qfi: unitary optimum, dimension check, refinement") {
  const auto f = HamiltonianFamily::direction_field(1.0);
  const ProbeOptimum best = max_noisy_qfi(f, 1.0, fig3_schedule(0.0), 1.0);
  CHECK(std::abs(best.qfi.value - 3.9469503) < 1e-4);
  CHECK(best.qfi.method == QfiMethod::Sld);
  CHECK(std::abs(noisy_qfi(f, 1.0, fig3_schedule(0.0), 1.0, best.probe).value - best.qfi.value) < 1e-6);

  const auto qutrit = HamiltonianFamily::multiplicative(HermitianMatrix(ComplexMatrix::Identity(3, 3)));
  CHECK(kind_of([&] {
          max_noisy_qfi(qutrit, 1.0, FeedbackSchedule::identity(2, 1.0, 3), 0.9);
        }) == ErrorKind::UnsupportedDimension);

  ProbeSearch coarse;
  coarse.refine_rounds = 0;
  for (double beta : {-1.0, 0.0, 0.8}) {
    const double grid_only = max_noisy_qfi(f, 1.0, fig3_schedule(beta), kEta, kDefaultDx, coarse).qfi.value;
    const double refined = max_noisy_qfi(f, 1.0, fig3_schedule(beta), kEta).qfi.value;
    CHECK(refined >= grid_only);
  }

  CHECK_THROWS_AS(max_noisy_qfi(f, 1.0, fig3_schedule(0.0), kEta, kDefaultDx, ProbeSearch{0, 8, 1, 1e-7}), Error);
}

TEST_CASE("property: optimiser beats random probes at the Fig. 3 settings") {
  Rng rng(68);
  const auto f = HamiltonianFamily::direction_field(1.0);
  for (double beta : {-1.4, 0.0, 1.0}) {
    const FeedbackSchedule s = fig3_schedule(beta);
    const double best = max_noisy_qfi(f, 1.0, s, kEta).qfi.value;
    const NoisyProcess process(f, 1.0, s, kEta, kDefaultDx);
    for (int trial = 0; trial < 1000; ++trial) CHECK(process.qfi(Probe(testing::random_pure(rng, 2))) <= best + 1e-6);
  }
}

TEST_CASE("noisy_beta_sweep: unitary limit reproduces the noiseless sweep") {
  const auto f = HamiltonianFamily::direction_field(1.0);
  NoisySweepConfig cfg;
  cfg.eta = 1.0;
  cfg.beta_grid = linspace(-2.0, 2.0, 9);
  cfg.search = quick_search();
  const SweepResult noisy = noisy_beta_sweep(cfg, f);
  const SweepResult clean = beta_sweep(f, 1.0, 5, 1.0, cfg.beta_grid);
  CHECK(rel(noisy.qfi_uncontrolled, clean.qfi_uncontrolled) < 1e-4);
  for (std::size_t i = 0; i < cfg.beta_grid.size(); ++i)
    CHECK(rel(noisy.qfi_controlled[i], clean.qfi_controlled[i]) < 1e-4);
  REQUIRE(noisy.meta.eta.has_value());
  CHECK(*noisy.meta.eta == 1.0);
}

TEST_CASE("noisy_beta_sweep: asymmetric interval and deterministic parallel output") {
  const auto f = HamiltonianFamily::direction_field(1.0);
  NoisySweepConfig cfg;
  cfg.beta_grid = linspace(-3.0, 3.0, 61);
  cfg.search = quick_search();
  cfg.threads = 1;
  const SweepResult serial = noisy_beta_sweep(cfg, f);
  cfg.threads = 4;
  const SweepResult parallel = noisy_beta_sweep(cfg, f);
  CHECK(std::memcmp(serial.qfi_controlled.data(), parallel.qfi_controlled.data(),
                    serial.qfi_controlled.size() * sizeof(double)) == 0);
  REQUIRE(serial.gain_interval.has_value());
  CHECK(std::abs(serial.gain_interval->lo + serial.gain_interval->hi) > 0.05);
}

TEST_CASE("NoisySweepConfig validation") {
  NoisySweepConfig cfg;
  cfg.beta_grid = {0.0};
  CHECK_NOTHROW(cfg.validate());
  cfg.eta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.eta = 0.9;
  cfg.segments = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.segments = 5;
  cfg.beta_grid = {1.0, -1.0};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.beta_grid.clear();
  CHECK_THROWS_AS(cfg.validate(), Error);
}
