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

// Evolutions interleaved with coherent controls:
//
//   U_total(x) = U_t(x) C_1 U_t(x) C_2 ... U_t(x) C_m,   t = T / m.
//
// Controls are built from an estimate x_hat and held fixed when the Fisher
// information is taken with respect to x.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hamest/constants.hpp"
#include "hamest/family.hpp"
#include "hamest/qfi.hpp"

namespace hamest {

struct Estimate {
  double x_hat;
};

class FeedbackSchedule {
 public:
  /// Throws InvalidArgument unless m >= 1, T > 0 and there are m controls,
  /// NotUnitary if a control fails the unitary check.
  FeedbackSchedule(int segments, double total_time, std::vector<UnitaryMatrix> controls);

  /// m identity controls: the plain evolution e^{-iH(x)T} cut into m pieces.
  static FeedbackSchedule identity(int segments, double total_time, Eigen::Index dim);

  int segments() const noexcept { return segments_; }
  double total_time() const noexcept { return total_time_; }
  double segment_time() const noexcept { return total_time_ / segments_; }
  const std::vector<UnitaryMatrix>& controls() const noexcept { return controls_; }

 private:
  int segments_;
  double total_time_;
  std::vector<UnitaryMatrix> controls_;
};

UnitaryMatrix total_unitary(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule);

/// C_1 = ... = C_{m-1} = U_t(x_hat)^dagger, C_m = I.
FeedbackSchedule optimal_schedule(const HamiltonianFamily& family, Estimate estimate, int segments,
                                  double total_time);

/// x -> total_unitary(family, x, schedule), holding the controls fixed.
UnitaryFamily controlled_family(const HamiltonianFamily& family, const FeedbackSchedule& schedule);

QfiResult controlled_qfi(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule,
                         double dx = kDefaultDx);

/// (2 m c_te(U_t(x - dx/2)^dagger U_t(x + dx/2)) / dx)^2: no choice of
/// controls can push controlled_qfi above this.
double controlled_qfi_cap(const HamiltonianFamily& family, double x, const FeedbackSchedule& schedule,
                          double dx = kDefaultDx);

/// Region of positive gain around beta = 0. An open side means no sign
/// change was found and the value is the search boundary.
struct GainInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
};

struct SweepMeta {
  double x_true = 1.0;
  double total_time = 1.0;
  int segments = 1;
  double dx = kDefaultDx;
  std::optional<double> eta;
};

struct SweepResult {
  std::vector<double> betas;
  std::vector<double> qfi_controlled;
  double qfi_uncontrolled = 0.0;
  std::optional<GainInterval> gain_interval;
  SweepMeta meta;
};

using GainFunction = std::function<double(double)>;

/// Starting from beta = 0 (where gain_at_zero > 0), walks the pre-scanned grid
/// outwards on each side to the first non-positive gain and bisects the bracket
/// to width < tol.
GainInterval refine_gain_interval(const GainFunction& gain, std::span<const double> grid,
                                  std::span<const double> gains, double gain_at_zero,
                                  double tol = kGainBisectionTol);

/// Evaluates `gain` on `prescan_points` evenly spaced points of `range`
/// (concurrently), then refine_gain_interval. Throws InvalidArgument unless
/// gain(0) > 0 and 0 lies inside the range.
GainInterval locate_gain_interval(const GainFunction& gain, std::pair<double, double> range,
                                  int prescan_points = kGainPrescanPoints, double tol = kGainBisectionTol,
                                  unsigned threads = 0);

/// Controlled QFI with controls from x_hat = (1 + beta) x_true, against the
/// identity-control baseline.
SweepResult beta_sweep(const HamiltonianFamily& family, double x_true, int segments, double total_time,
                       std::span<const double> beta_grid, double dx = kDefaultDx, unsigned threads = 0);

GainInterval gain_interval(const HamiltonianFamily& family, double x_true, int segments, double total_time,
                           double dx = kDefaultDx,
                           std::pair<double, double> search_range = {kGainSearchMin, kGainSearchMax},
                           unsigned threads = 0);

struct ScalingPoint {
  int segments;
  double qfi;
};

/// Controlled QFI at x_hat = x for each segment count.
std::vector<ScalingPoint> scaling_curve(const HamiltonianFamily& family, double x, double total_time,
                                        std::span<const int> segment_counts, double dx = kDefaultDx,
                                        unsigned threads = 0);

/// Evenly spaced grid including both ends; steps >= 2.
std::vector<double> linspace(double lo, double hi, int steps);

}  // namespace hamest
