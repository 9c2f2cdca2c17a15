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

#include "hamest/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hamest/errors.hpp"
#include "hamest/parallel.hpp"
#include "hamest/spectral.hpp"

namespace hamest {

namespace {

// a has gain <= 0, b has gain > 0.
double bisect_crossing(const GainFunction& gain, double a, double b, double tol) {
  while (std::abs(b - a) >= tol) {
    const double mid = 0.5 * (a + b);
    if (gain(mid) > 0.0)
      b = mid;
    else
      a = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

FeedbackSchedule::FeedbackSchedule(int segments, double total_time, std::vector<UnitaryMatrix> controls)
    : segments_(segments), total_time_(total_time), controls_(std::move(controls)) {
  if (segments_ < 1) throw Error(ErrorKind::InvalidArgument, "segment count m must be >= 1");
  if (!(total_time_ > 0.0) || !std::isfinite(total_time_))
    throw Error(ErrorKind::InvalidArgument, "total time T must be positive");
  if (controls_.size() != static_cast<std::size_t>(segments_)) {
    std::ostringstream msg;
    msg << "expected " << segments_ << " controls, got " << controls_.size();
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  for (std::size_t k = 0; k < controls_.size(); ++k) {
    if (controls_[k].dim() != controls_.front().dim())
      throw Error(ErrorKind::DimensionMismatch, "controls must share one dimension");
    if (!is_unitary(controls_[k].matrix(), Tolerances::unitary))
      throw Error(ErrorKind::NotUnitary, "control " + std::to_string(k + 1) + " is not unitary");
  }
}

FeedbackSchedule FeedbackSchedule::identity(int segments, double total_time, Eigen::Index dim) {
  return FeedbackSchedule(segments, total_time,
                          std::vector<UnitaryMatrix>(static_cast<std::size_t>(std::max(segments, 0)),
                                                     UnitaryMatrix::identity(dim)));
}

UnitaryMatrix total_unitary(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule) {
  if (schedule.controls().front().dim() != family.dim())
    throw Error(ErrorKind::DimensionMismatch, "controls and family differ in dimension");
  const ComplexMatrix step = family.unitary_at(x, schedule.segment_time()).matrix();
  ComplexMatrix total = ComplexMatrix::Identity(family.dim(), family.dim());
  for (const auto& control : schedule.controls()) total = total * step * control.matrix();
  return UnitaryMatrix::trusted(std::move(total));
}

FeedbackSchedule optimal_schedule(const HamiltonianFamily& family, Estimate estimate, int segments,
                                  double total_time) {
  if (segments < 1) throw Error(ErrorKind::InvalidArgument, "segment count m must be >= 1");
  if (!(total_time > 0.0)) throw Error(ErrorKind::InvalidArgument, "total time T must be positive");
  const UnitaryMatrix undo = family.unitary_at(estimate.x_hat, total_time / segments).adjoint();
  std::vector<UnitaryMatrix> controls(static_cast<std::size_t>(segments - 1), undo);
  controls.push_back(UnitaryMatrix::identity(family.dim()));
  return FeedbackSchedule(segments, total_time, std::move(controls));
}

UnitaryFamily controlled_family(const HamiltonianFamily& family, const FeedbackSchedule& schedule) {
  return [family, schedule](double x) { return total_unitary(family, x, schedule); };
}

QfiResult controlled_qfi(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule, double dx) {
  return channel_qfi_fd(controlled_family(family, schedule), x, dx);
}

double controlled_qfi_cap(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule,
                          double dx) {
  const double t = schedule.segment_time();
  const UnitaryMatrix segment_shift = family.unitary_at(x - 0.5 * dx, t).adjoint() * family.unitary_at(x + 0.5 * dx, t);
  const double bound = 2.0 * schedule.segments() * c_te(segment_shift).c_te / dx;
  return bound * bound;
}

GainInterval refine_gain_interval(const GainFunction& gain, std::span<const double> grid,
                                  std::span<const double> gains, double gain_at_zero, double tol) {
  if (grid.size() != gains.size()) throw Error(ErrorKind::InvalidArgument, "grid and gain values differ in length");
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
  if (!(gain_at_zero > 0.0)) throw Error(ErrorKind::InvalidArgument, "no gain at beta = 0");

  GainInterval out;
  // left side: grid points below zero, nearest first
  {
    double inner = 0.0;
    bool found = false;
    for (std::size_t i = grid.size(); i-- > 0;) {
      if (grid[i] >= 0.0) continue;
      if (gains[i] <= 0.0) {
        out.lo = bisect_crossing(gain, grid[i], inner, tol);
        found = true;
        break;
      }
      inner = grid[i];
    }
    if (!found) {
      out.lo = std::min(grid.front(), 0.0);
      out.lo_open = true;
    }
  }
  {
    double inner = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i] <= 0.0) continue;
      if (gains[i] <= 0.0) {
        out.hi = bisect_crossing(gain, grid[i], inner, tol);
        found = true;
        break;
      }
      inner = grid[i];
    }
    if (!found) {
      out.hi = std::max(grid.back(), 0.0);
      out.hi_open = true;
    }
  }
  return out;
}

GainInterval locate_gain_interval(const GainFunction& gain, std::pair<double, double> range, int prescan_points,
                                  double tol, unsigned threads) {
  if (!(range.first < 0.0 && range.second > 0.0))
    throw Error(ErrorKind::InvalidArgument, "search range must contain beta = 0 in its interior");
  const double at_zero = gain(0.0);
  if (!(at_zero > 0.0)) throw Error(ErrorKind::InvalidArgument, "controls give no gain at beta = 0");
  const std::vector<double> grid = linspace(range.first, range.second, prescan_points);
  std::vector<double> gains(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { gains[i] = gain(grid[i]); });
  return refine_gain_interval(gain, grid, gains, at_zero, tol);
}

SweepResult beta_sweep(const HamiltonianFamily& family, double x_true, int segments, double total_time,
                       std::span<const double> beta_grid, double dx, unsigned threads) {
  if (beta_grid.empty()) throw Error(ErrorKind::InvalidArgument, "beta grid is empty");
  if (!std::is_sorted(beta_grid.begin(), beta_grid.end()))
    throw Error(ErrorKind::InvalidArgument, "beta grid must be sorted");

  SweepResult out;
  out.meta = {x_true, total_time, segments, dx, std::nullopt};
  out.betas.assign(beta_grid.begin(), beta_grid.end());
  out.qfi_uncontrolled =
      controlled_qfi(family, x_true, FeedbackSchedule::identity(segments, total_time, family.dim()), dx).value;

  auto controlled_at = [&](double beta) {
    const auto schedule = optimal_schedule(family, Estimate{(1.0 + beta) * x_true}, segments, total_time);
    return controlled_qfi(family, x_true, schedule, dx).value;
  };
  out.qfi_controlled.resize(out.betas.size());
  parallel_for(out.betas.size(), threads, [&](std::size_t i) { out.qfi_controlled[i] = controlled_at(out.betas[i]); });

  const GainFunction gain = [&](double beta) { return controlled_at(beta) - out.qfi_uncontrolled; };
  const double at_zero = gain(0.0);
  if (at_zero > 0.0) {
    std::vector<double> gains(out.betas.size());
    for (std::size_t i = 0; i < gains.size(); ++i) gains[i] = out.qfi_controlled[i] - out.qfi_uncontrolled;
    out.gain_interval = refine_gain_interval(gain, out.betas, gains, at_zero);
  }
  return out;
}

GainInterval gain_interval(const HamiltonianFamily& family, double x_true, int segments, double total_time,
                           double dx, std::pair<double, double> search_range, unsigned threads) {
  const double baseline =
      controlled_qfi(family, x_true, FeedbackSchedule::identity(segments, total_time, family.dim()), dx).value;
  const GainFunction gain = [&](double beta) {
    const auto schedule = optimal_schedule(family, Estimate{(1.0 + beta) * x_true}, segments, total_time);
    return controlled_qfi(family, x_true, schedule, dx).value - baseline;
  };
  return locate_gain_interval(gain, search_range, kGainPrescanPoints, kGainBisectionTol, threads);
}

std::vector<ScalingPoint> scaling_curve(const HamiltonianFamily& family, double x, double total_time,
                                        std::span<const int> segment_counts, double dx, unsigned threads) {
  std::vector<ScalingPoint> out(segment_counts.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const int m = segment_counts[i];
    const auto schedule = optimal_schedule(family, Estimate{x}, m, total_time);
    out[i] = {m, controlled_qfi(family, x, schedule, dx).value};
  });
  return out;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "a grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  out.back() = hi;
  return out;
}

}  // namespace hamest
