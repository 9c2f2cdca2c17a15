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

#include <stdexcept>
#include <string>
#include <string_view>

namespace hamest {

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  NotHermitian,
  NotUnitary,
  InvalidState,
  DimensionMismatch,
  OutOfValidity,
  StepTooLarge,
  DerivativeInaccurate,
  NoInformation,
  InconsistentDerivative,
  UnsupportedDimension,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OutOfValidity: return "OutOfValidity";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::DerivativeInaccurate: return "DerivativeInaccurate";
    case ErrorKind::NoInformation: return "NoInformation";
    case ErrorKind::InconsistentDerivative: return "InconsistentDerivative";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

/// All library failures are reported with this exception; kind() lets callers
/// (the CLI, the Python layer) map them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hamest
