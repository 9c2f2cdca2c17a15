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

// Dephased segments interleaved with controls, and probe-optimised Fisher
// information of the resulting mixed states.
//
// Each segment is the channel with Kraus operators
//   K1 = sqrt((1 + eta)/2) U_t(x),   K2 = sqrt((1 - eta)/2) sigma3 U_t(x),
// so eta is the per-segment coherence factor. Segments and controls act in the
// same order as in total_unitary: C_m first, the last segment last.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hamest/feedback.hpp"

namespace hamest {

class KrausChannel {
 public:
  /// Throws DimensionMismatch for ragged operators and InvalidArgument unless
  /// sum K^dagger K = I within 1e-10.
  explicit KrausChannel(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  Eigen::Index dim() const noexcept { return ops_.front().rows(); }

  /// Column-stacking superoperator: vec(sum K rho K^dagger) = S vec(rho).
  ComplexMatrix superoperator() const;

 private:
  std::vector<ComplexMatrix> ops_;
};

/// Kraus form of one dephased segment; eta = 1 gives the single operator U_t(x).
/// Throws InvalidArgument unless 0 <= eta <= 1.
KrausChannel dephasing_after_unitary(const HamiltonianFamily& family, double x, double t, double eta);

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

DensityMatrix evolve_noisy(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                           const Probe& probe);

/// SLD Fisher information of x -> evolve_noisy(x), controls held fixed.
QfiResult noisy_qfi(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                    const Probe& probe, double dx = kDefaultDx);

/// Grid over the Bloch sphere followed by compass refinement.
///
/// The grid has azimuth_points x polar_points probes (polar angles at cell
/// centres). Each refinement round runs a compass search on (polar, azimuth)
/// from the incumbent: try +/- step on each angle, move on strict
/// improvement, otherwise halve the step, until the step drops below
/// min_step. Round r starts from a step of grid spacing / 2^r.
struct ProbeSearch {
  int azimuth_points = 64;
  int polar_points = 32;
  int refine_rounds = 3;
  double min_step = 1e-7;
};

struct ProbeOptimum {
  QfiResult qfi;
  Probe probe;
  double polar;
  double azimuth;
};

/// The whole dephased schedule as superoperators at x - dx/2, x, x + dx/2,
/// so that probe scans cost a few small products per probe.
class NoisyProcess {
 public:
  NoisyProcess(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta, double dx);

  double qfi(const Probe& probe) const;
  double qfi(double polar, double azimuth) const { return qfi(Probe::bloch(polar, azimuth)); }
  DensityMatrix output(const Probe& probe) const;

 private:
  Eigen::Index dim_;
  double dx_;
  ComplexMatrix before_, centre_, after_;
};

/// Qubit families only (UnsupportedDimension otherwise). Deterministic; ties
/// on the grid go to the lowest (azimuth-major) index.
ProbeOptimum max_noisy_qfi(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                           double dx = kDefaultDx, const ProbeSearch& search = {});

struct NoisySweepConfig {
  double eta = std::pow(0.8, 0.2);
  int segments = 5;
  double total_time = 1.0;
  double x_true = 1.0;
  std::vector<double> beta_grid;
  double dx = kDefaultDx;
  ProbeSearch search;
  unsigned threads = 0;

  void validate() const;
};

/// Probe-maximised QFI per beta with controls from (1 + beta) x_true against
/// the probe-maximised identity-control baseline under the same noise.
SweepResult noisy_beta_sweep(const NoisySweepConfig& config, const HamiltonianFamily& family);

}  // namespace hamest
