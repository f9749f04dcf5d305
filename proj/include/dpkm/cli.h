//
// Copyright 2026 The dpkmedian Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPKM_CLI_H_
#define DPKM_CLI_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

namespace dpkm {

enum class Subcommand { kCoverCheck, kPipeline, kOracle, kMechanisms, kBench };

const char* SubcommandName(Subcommand s);

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDegenerate = 3;

struct RunSpec {
  Subcommand subcommand = Subcommand::kPipeline;
  std::string input;
  std::string output;  // empty: write the report to stdout
  std::size_t k = 2;
  double eps = 0.5;
  double eps_p = 1.0;
  double delta_p = 1e-6;
  std::uint64_t seed = 1;
  std::size_t repeats = 1;
  bool normalize = false;
  std::optional<std::size_t> d_prime;
  std::array<double, 3> budget_split = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
};

// Builds the report for `spec`. Throws InvalidArgumentError / ParseError on
// validation failures and DegenerateInstanceError on aborted runs.
nlohmann::json BuildReport(const RunSpec& spec);

// Runs `spec` and writes the JSON report. Returns kExitOk, kExitValidation
// (nothing written) or kExitDegenerate (nothing written); diagnostics go to
// `err`.
int Run(const RunSpec& spec, std::ostream& err);

// argv front end for Run().
int RunCommandLine(int argc, char** argv);

}  // namespace dpkm

#endif  // DPKM_CLI_H_
