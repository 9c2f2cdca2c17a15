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

#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hamest::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Bad flag value or flag combination; `flag` names the offender.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string flag, const std::string& message)
      : std::runtime_error(flag + ": " + message), flag_(std::move(flag)) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

struct RunConfig {
  std::string command;  // qfi | sweep | noisy-sweep | scaling | bound
  nlohmann::json family = {{"kind", "direction_field"}, {"B", 1.0}};

  double x = 1.0;
  double total_time = 1.0;
  int segments = 5;
  double dx = 1e-5;
  long long repetitions = 1;
  double eta = std::pow(0.8, 0.2);

  // qfi / bound
  bool controlled = false;
  double beta = 0.0;
  std::string method = "cte_fd";

  // sweeps
  double beta_min = -3.0;
  double beta_max = 3.0;
  int beta_steps = 601;

  // scaling
  std::vector<int> segment_values = {1, 2, 5, 10, 20, 50, 100, 200};

  // probe search for noisy-sweep
  int azimuth_points = 64;
  int polar_points = 32;
  int refine_rounds = 3;

  unsigned threads = 0;
  std::string out_path;  // empty: standard output
  std::string format = "csv";

  /// Throws UsageError naming the first invalid field.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& config);
/// Accepts a bare config object or a result document with a "config" member.
RunConfig config_from_json(const nlohmann::json& j);

/// Parses argv (argv[0] is the program name). Flags override values from
/// --config. Throws UsageError; CLI11 parse failures surface as UsageError too.
/// Sets `help_requested` and returns a default config when --help was given.
RunConfig parse_and_validate(const std::vector<std::string>& args, std::ostream& help_out, bool& help_requested);

/// Executes a validated config; records go to `out` unless config.out_path is set.
/// Returns kExitOk or kExitNumerical (library Error, message on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_and_validate + run with exit-code mapping.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// %.12g, with "inf"/"nan" spelled out.
std::string format_number(double v);

}  // namespace hamest::cli
