// Copyright 2026 The usdkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace usdkit {

enum class Errc {
  NotHermitian,
  NotPsd,
  NotUnitary,
  ConvergenceFailure,
  InvalidState,
  InvalidProblem,
  ZeroFidelity,
  OverlappingSupports,
  FullyOverlapping,
  NotSaturated,
  InvalidPovm,
  NegativeProbability,
  DimensionTooLarge,
  BadNormalization,
  NotInvolution,
  InvalidArgument,
  ParseError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPsd: return "NotPsd";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::InvalidState: return "InvalidState";
    case Errc::InvalidProblem: return "InvalidProblem";
    case Errc::ZeroFidelity: return "ZeroFidelity";
    case Errc::OverlappingSupports: return "OverlappingSupports";
    case Errc::FullyOverlapping: return "FullyOverlapping";
    case Errc::NotSaturated: return "NotSaturated";
    case Errc::InvalidPovm: return "InvalidPovm";
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::BadNormalization: return "BadNormalization";
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (notably the command-line front end) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace usdkit
