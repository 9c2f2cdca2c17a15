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

#include "hamest/noisy.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "hamest/errors.hpp"
#include "hamest/parallel.hpp"

namespace hamest {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// vec(U rho U^dagger) = (conj(U) kron U) vec(rho)
ComplexMatrix conjugation_superoperator(const ComplexMatrix& u) { return kron(u.conjugate(), u); }

ComplexVector vec(const ComplexMatrix& m) { return Eigen::Map<const ComplexVector>(m.data(), m.size()); }

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index dim) {
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "eta must lie in [0, 1], got " << eta;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

ComplexMatrix schedule_superoperator(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule,
                                     double eta) {
  const ComplexMatrix segment = dephasing_after_unitary(family, x, schedule.segment_time(), eta).superoperator();
  const Eigen::Index n = family.dim() * family.dim();
  ComplexMatrix total = ComplexMatrix::Identity(n, n);
  // time order C_m, segment, C_{m-1}, segment, ..., C_1, segment
  for (const auto& control : schedule.controls()) total = total * segment * conjugation_superoperator(control.matrix());
  return total;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw Error(ErrorKind::InvalidArgument, "a channel needs at least one Kraus operator");
  const Eigen::Index d = ops_.front().rows();
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops_) {
    if (k.rows() != d || k.cols() != d) throw Error(ErrorKind::DimensionMismatch, "Kraus operators differ in shape");
    completeness += k.adjoint() * k;
  }
  const double defect = max_abs(completeness - ComplexMatrix::Identity(d, d));
  if (defect > Tolerances::kraus_completeness) {
    std::ostringstream msg;
    msg << "Kraus operators are not trace preserving (max |sum K^dagger K - I| = " << defect << ")";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

ComplexMatrix KrausChannel::superoperator() const {
  const Eigen::Index n = dim() * dim();
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (const auto& k : ops_) s += conjugation_superoperator(k);
  return s;
}

KrausChannel dephasing_after_unitary(const HamiltonianFamily& family, double x, double t, double eta) {
  require_eta(eta);
  if (family.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "sigma3 dephasing is defined for qubits");
  const ComplexMatrix u = family.unitary_at(x, t).matrix();
  std::vector<ComplexMatrix> ops{std::sqrt(0.5 * (1.0 + eta)) * u};
  if (eta < 1.0) ops.push_back(std::sqrt(0.5 * (1.0 - eta)) * sigma3() * u);
  return KrausChannel(std::move(ops));
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "channel and state differ in dimension");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : channel.ops()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

DensityMatrix evolve_noisy(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                           const Probe& probe) {
  if (probe.dim() != family.dim()) throw Error(ErrorKind::DimensionMismatch, "probe and family differ in dimension");
  const KrausChannel segment = dephasing_after_unitary(family, x, schedule.segment_time(), eta);
  DensityMatrix rho = probe.density();
  const auto& controls = schedule.controls();
  for (auto it = controls.rbegin(); it != controls.rend(); ++it) {
    const ComplexMatrix& c = it->matrix();
    const ComplexMatrix turned = c * rho.matrix() * c.adjoint();
    rho = apply_channel(segment, DensityMatrix(0.5 * (turned + turned.adjoint())));
  }
  return rho;
}

QfiResult noisy_qfi(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                    const Probe& probe, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "dx must be positive");
  const DensityMatrix rho = evolve_noisy(family, x, schedule, eta, probe);
  const ComplexMatrix drho = (evolve_noisy(family, x + 0.5 * dx, schedule, eta, probe).matrix() -
                              evolve_noisy(family, x - 0.5 * dx, schedule, eta, probe).matrix()) /
                             dx;
  QfiResult out = mixed_state_qfi_sld(rho, HermitianMatrix::hermitize(drho));
  out.dx_used = dx;
  return out;
}

NoisyProcess::NoisyProcess(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                           double dx)
    : dim_(family.dim()),
      dx_(dx),
      before_(schedule_superoperator(family, x - 0.5 * dx, schedule, eta)),
      centre_(schedule_superoperator(family, x, schedule, eta)),
      after_(schedule_superoperator(family, x + 0.5 * dx, schedule, eta)) {
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "dx must be positive");
}

DensityMatrix NoisyProcess::output(const Probe& probe) const {
  const ComplexVector in = vec(probe.amplitudes() * probe.amplitudes().adjoint());
  const ComplexMatrix rho = unvec(centre_ * in, dim_);
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

double NoisyProcess::qfi(const Probe& probe) const {
  const ComplexVector in = vec(probe.amplitudes() * probe.amplitudes().adjoint());
  const ComplexMatrix rho = unvec(centre_ * in, dim_);
  const ComplexMatrix drho = unvec((after_ - before_) * in, dim_) / dx_;
  return mixed_state_qfi_sld(DensityMatrix(0.5 * (rho + rho.adjoint())), HermitianMatrix::hermitize(drho)).value;
}

ProbeOptimum max_noisy_qfi(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double eta,
                           double dx, const ProbeSearch& search) {
  if (family.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "probe optimisation is implemented for qubits only");
  if (search.azimuth_points < 1 || search.polar_points < 1 || search.refine_rounds < 0 || !(search.min_step > 0.0))
    throw Error(ErrorKind::InvalidArgument, "invalid probe search settings");

  const NoisyProcess process(family, x, schedule, eta, dx);
  const double polar_spacing = std::numbers::pi / search.polar_points;
  const double azimuth_spacing = 2.0 * std::numbers::pi / search.azimuth_points;

  double best = -1.0;
  double best_polar = 0.0;
  double best_azimuth = 0.0;
  for (int i = 0; i < search.azimuth_points; ++i) {
    for (int j = 0; j < search.polar_points; ++j) {
      const double polar = (j + 0.5) * polar_spacing;
      const double azimuth = i * azimuth_spacing;
      const double v = process.qfi(polar, azimuth);
      if (v > best) {
        best = v;
        best_polar = polar;
        best_azimuth = azimuth;
      }
    }
  }

  for (int round = 0; round < search.refine_rounds; ++round) {
    double scale = std::ldexp(1.0, -round);
    while (scale * std::max(polar_spacing, azimuth_spacing) >= search.min_step) {
      bool moved = false;
      for (int coord = 0; coord < 2 && !moved; ++coord) {
        for (const double sign : {1.0, -1.0}) {
          const double polar = best_polar + (coord == 0 ? sign * scale * polar_spacing : 0.0);
          const double azimuth = best_azimuth + (coord == 1 ? sign * scale * azimuth_spacing : 0.0);
          const double v = process.qfi(polar, azimuth);
          if (v > best) {
            best = v;
            best_polar = polar;
            best_azimuth = azimuth;
            moved = true;
            break;
          }
        }
      }
      if (!moved) scale *= 0.5;
    }
  }

  return {{best, QfiMethod::Sld, dx}, Probe::bloch(best_polar, best_azimuth), best_polar, best_azimuth};
}

void NoisySweepConfig::validate() const {
  require_eta(eta);
  if (segments < 1) throw Error(ErrorKind::InvalidArgument, "segment count m must be >= 1");
  if (!(total_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "total time T must be positive");
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "dx must be positive");
  if (beta_grid.empty()) throw Error(ErrorKind::InvalidArgument, "beta grid is empty");
  if (!std::is_sorted(beta_grid.begin(), beta_grid.end()))
    throw Error(ErrorKind::InvalidArgument, "beta grid must be sorted");
}

SweepResult noisy_beta_sweep(const NoisySweepConfig& config, const HamiltonianFamily& family) {
  config.validate();
  SweepResult out;
  out.meta = {config.x_true, config.total_time, config.segments, config.dx, config.eta};
  out.betas = config.beta_grid;
  const auto baseline_schedule = FeedbackSchedule::identity(config.segments, config.total_time, family.dim());
  out.qfi_uncontrolled =
      max_noisy_qfi(family, config.x_true, baseline_schedule, config.eta, config.dx, config.search).qfi.value;

  auto controlled_at = [&](double beta) {
    const auto schedule =
        optimal_schedule(family, Estimate{(1.0 + beta) * config.x_true}, config.segments, config.total_time);
    return max_noisy_qfi(family, config.x_true, schedule, config.eta, config.dx, config.search).qfi.value;
  };
  out.qfi_controlled.resize(out.betas.size());
  parallel_for(out.betas.size(), config.threads,
               [&](std::size_t i) { out.qfi_controlled[i] = controlled_at(out.betas[i]); });

  const GainFunction gain = [&](double beta) { return controlled_at(beta) - out.qfi_uncontrolled; };
  const double at_zero = gain(0.0);
  if (at_zero > 0.0) {
    std::vector<double> gains(out.betas.size());
    for (std::size_t i = 0; i < gains.size(); ++i) gains[i] = out.qfi_controlled[i] - out.qfi_uncontrolled;
    out.gain_interval = refine_gain_interval(gain, out.betas, gains, at_zero);
  }
  return out;
}

}  // namespace hamest
