// Copyright 2026 The qswitch Authors
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
#include <ostream>
#include <string>
#include <vector>

#include "qswitch/switch.hpp"
#include "switchsim/table.hpp"

namespace switchsim {

enum class Command { kFig2, kFig3, kFig4, kFig5, kFig6, kStatements, kQsi, kNonmarkov };
enum class Format { kCsv, kJson };

Command parse_command(const std::string& name);
std::string command_name(Command c);

struct TimeGrid {
  double t_start = 0.0;
  /// Defaults to 5/gamma per gamma when absent.
  std::optional<double> t_end;
  int steps = 500;

  std::vector<double> points(double gamma) const;
};

struct RunConfig {
  Command command = Command::kFig2;
  std::vector<double> gammas;  // empty: command default
  double gamma3 = 0.0;         // fig6 only
  std::optional<double> p, q, q1, q2;
  TimeGrid grid;
  std::optional<std::string> out;
  Format format = Format::kCsv;
  std::uint64_t seed = 1;
  std::vector<int> dims;  // statements only; empty: {2, 3, 4, 5}
  int trials = 20;

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
  /// Switch configuration from the noise options; nullopt when none are given.
  std::optional<qswitch::SwitchConfig> switch_config() const;
};

/// A computed table plus diagnostics. `failures` counts violated invariants.
struct CommandResult {
  Table table;
  std::vector<std::string> warnings;
  int failures = 0;
};

CommandResult run_fig2(const RunConfig& config);
CommandResult run_fig3(const RunConfig& config);
CommandResult run_fig4(const RunConfig& config);
CommandResult run_fig5(const RunConfig& config);
CommandResult run_fig6(const RunConfig& config);
CommandResult run_statements(const RunConfig& config);
CommandResult run_qsi(const RunConfig& config);
CommandResult run_nonmarkov(const RunConfig& config);

CommandResult run_command(const RunConfig& config);

/// Full CLI: parses arguments, runs the command and writes the table to
/// --out (or `out`). Returns 0 on success, 1 when an invariant check fails,
/// 2 on argument or I/O errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace switchsim
