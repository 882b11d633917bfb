// Copyright 2026 The qramsey Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qramsey/fockspace.hpp"
#include "qramsey/self_eraser.hpp"

namespace qramsey {

inline constexpr std::string_view kToolName = "qramsey";
inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kOutputDirEnv = "QRAMSEY_OUTPUT_DIR";

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitContract = 4;
inline constexpr int kExitIo = 5;

// Inclusive parameter range "start:end:steps": `steps` grid points with both
// endpoints included (steps == 1 requires start == end). Parsing failures
// are usage errors; semantically impossible ranges are config errors.
struct Range {
  double start = 0.0;
  double end = 0.0;
  int steps = 1;

  static Range parse(std::string_view text);
  std::string to_string() const;
  std::vector<double> grid() const;
  void validate() const;
};

enum class OutputFormat { csv, json };
enum class Command { fringes, duality, bell, protocol, oracle_check };
enum class OracleStates { random, protocol };

std::string_view to_string(OutputFormat f);
std::string_view to_string(Command c);
std::string_view to_string(OracleStates s);

// Fully resolved run description. Every field that shapes the numbers in an
// output table is serialized into that table's metadata, so a table can be
// regenerated from its own header alone.
struct RunConfig {
  Command command = Command::fringes;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: stdout
  std::string dump_dir;     // protocol only: state dumps, empty: none
  bool degrees = false;     // angles in args were given in degrees

  int cutoff = 16;

  // fringes and protocol
  double s1_sq = 0.5;
  ErasonPath path = ErasonPath::both_cavities;
  Range phi_range{0.0, 0.0, 1};  // fringes
  double phi = 0.0;              // protocol, duality

  // duality
  FieldPreparation field = FieldPreparation::vacuum();
  Range theta_range{0.0, 0.0, 1};

  // bell
  Range theta1_range{0.0, 0.0, 1};

  // oracle-check
  OracleStates oracle_states = OracleStates::random;
  int oracle_cases = 200;
  double oracle_tol = 1e-8;
  std::uint64_t seed = 42;

  void validate() const;
};

// Raised by parse_args when --help is requested; carries the help text.
struct HelpRequested {
  std::string text;
};

// argv (excluding the program name) -> validated RunConfig.
RunConfig parse_args(const std::vector<std::string>& args);

// Tabular result with ordered metadata. Serialization is deterministic:
// fixed key order, 17-significant-digit numbers, no timestamps.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
  std::string to_json() const;
  std::string serialize(OutputFormat format) const;
};

ResultTable run(const RunConfig& config);

// Metadata round trip: every parameter needed to regenerate a table is in
// its metadata block.
std::vector<std::pair<std::string, std::string>> parse_csv_metadata(
    const std::string& csv_text);
std::vector<std::pair<std::string, std::string>> parse_json_metadata(
    const std::string& json_text);
RunConfig config_from_metadata(
    const std::vector<std::pair<std::string, std::string>>& metadata);

struct OracleReport {
  int cases;
  double max_deviation;
  double tolerance;
  bool pass;
};

// Compares jc_apply against jc_oracle on deterministic pseudo-random states
// (top rung left empty so both routes are defined).
OracleReport oracle_check_random(int n_max, int cases, double tol,
                                 std::uint64_t seed);

// Cutoff-independence of the self-eraser: runs the protocol at n_max = 2
// and at n_max = cutoff_hi over an (s1^2, phi) grid and compares the shared
// amplitudes and the detection statistics.
OracleReport oracle_check_protocol(int cutoff_hi, double tol);

// Front end used by the binary: parses, runs, writes, maps errors to exit
// statuses. Relative output paths are resolved against $QRAMSEY_OUTPUT_DIR
// when that variable is set.
int cli_main(int argc, const char* const* argv);

}  // namespace qramsey
