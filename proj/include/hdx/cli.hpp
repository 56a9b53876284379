// Copyright 2026 The hdx Authors
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

#ifndef HDX_CLI_HPP_
#define HDX_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdx/matrix_group.hpp"
#include "hdx/spectral.hpp"
#include "json.hpp"

namespace hdx {

inline constexpr const char* kVersion = "1.0.0";

enum ExitStatus : int {
  kExitPass = 0,
  kExitUsage = 1,
  kExitCheckFailed = 2,
  kExitInfeasible = 3,
  kExitSolver = 4,
};

/// Raised when an export needs cached groups that are not on disk.
class MissingCacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // build, verify-groups, verify-complex, spectra, affine, trickle, report-all, export
  std::uint32_t p = 2;
  std::uint32_t s = 2;
  std::uint32_t d = 3;
  std::optional<std::uint32_t> k;
  std::size_t cap = kDefaultClosureCap;
  bool allow_large_cap = false;
  double tol = 1e-8;
  SolverChoice solver = SolverChoice::kAuto;
  std::size_t crossover = 6000;
  std::string out_dir = ".";
  std::string cache_dir;

  // export
  std::string what;   // complex | graph | group
  std::string label;  // graph: skeleton | link | A | B; group: G or K_{...}
  std::optional<int> level;
  std::optional<std::uint32_t> link_type;
  // spectra on an exported graph
  std::string graph_file;

  /// Throws std::invalid_argument on an unknown command or bad parameters.
  void validate() const;
  /// Parameters that determine the results (no paths).
  nlohmann::json echo() const;
  /// Base name of the certificate, e.g. "spectra_p2_s2_d3".
  std::string artifact_name() const;
};

struct CheckResult {
  std::string name;
  nlohmann::json expected;
  nlohmann::json measured;
  double tolerance = 0.0;
  bool pass = false;
};

struct Certificate {
  nlohmann::json config;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  nlohmann::json data = nlohmann::json::object();
  std::string version = kVersion;
  /// Wall-clock seconds per stage; kept out of to_json() so certificates are
  /// byte-identical across runs.
  std::vector<std::pair<std::string, double>> timings;
  std::vector<std::string> written_files;

  bool pass() const;
  void add(std::string name, nlohmann::json expected, nlohmann::json measured, double tolerance, bool pass);
  nlohmann::json to_json() const;
  nlohmann::json timings_json() const;
};

/// Runs the configured pipeline. Exports write their files here; the
/// certificate itself is written by run_and_write(). Throws InfeasibleError,
/// SolverError, MissingCacheError or std::invalid_argument.
Certificate run(const RunConfig& config, std::ostream& log);

/// run() plus the certificate and timings files in out_dir, a summary on
/// `out` and diagnostics on `err`. Returns the exit status.
int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace hdx

#endif  // HDX_CLI_HPP_
