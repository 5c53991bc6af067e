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

// Command-line front end. Everything except argument parsing lives here so
// the tests can drive it without spawning processes.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "usdkit/oracle.hpp"
#include "usdkit/reduce.hpp"
#include "usdkit/simulate.hpp"
#include "usdkit/usd.hpp"

namespace usdkit::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNotSaturated = 2;

struct LoadedProblem {
  UsdProblem problem;
  json source;                  ///< generator spec, or null for explicit matrices
  std::optional<UsdPovm> povm;  ///< inline measurement, if given
};

/// Problem document: either explicit "rho0"/"rho1" matrices of [re, im]
/// pairs or a "generator" {name, params}, plus "eta0"/"eta1" and an
/// optional "povm" {E0, E1, Eq}. Throws Error(ParseError) on bad shape.
LoadedProblem parse_problem(const json& doc, const NumericConfig& cfg = {});
LoadedProblem load_problem(const std::string& path, const NumericConfig& cfg = {});

json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j, const char* what);

/// Explicit form of a problem; parse_problem reads it back unchanged.
json problem_to_json(const UsdProblem& p);

/// reduce -> bounds -> saturation, and the lifted measurement when the
/// reduced problem saturates.
struct Analysis {
  UsdProblem problem;
  ReductionResult reduction;
  BoundsReport reduced_bounds;
  double q_bound = 0;  ///< lifted to the original problem
  double fidelity = 0;
  double t10 = 0;
  double t01 = 0;
  double rudolph_bound = 0;
  double helstrom_q = 0;
  std::optional<SaturationCheck> saturation{};  ///< empty when F = 0 after reduction
  bool saturated = false;
  std::optional<UsdPovm> povm{};
  std::optional<FailureProbs> probs{};
  std::optional<PovmDiagnostics> diagnostics{};
};

Analysis analyze(const UsdProblem& p, const NumericConfig& cfg = {}, bool build = true);

struct SweepRow {
  double ratio = 0;  ///< eta1 / eta0
  Regime regime = Regime::Second;
  double alpha = 0;
  double q_bound = 0;
  double rudolph_bound = 0;
  double helstrom_q = 0;
  double margin0 = 0;  ///< smallest eigenvalue of rho0 - alpha F0 (reduced)
  double margin1 = 0;
  bool saturated = false;
};

/// Geometric grid from ratio_min to ratio_max; one step gives ratio_min.
std::vector<SweepRow> sweep(const UsdProblem& p, double ratio_min, double ratio_max, int steps,
                            const NumericConfig& cfg = {});

struct OracleRun {
  Analysis analysis;
  OracleResult result;  ///< on the reduced problem
  double best_q = 0;    ///< lifted
  double gap_to_bound = 0;
};

OracleRun run_oracle(const UsdProblem& p, const OracleConfig& ocfg, const NumericConfig& cfg = {});

json analysis_json(const Analysis& a);
json sweep_json(const std::vector<SweepRow>& rows);

/// Full command line: `usdkit <command> <file> [flags]`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace usdkit::cli
