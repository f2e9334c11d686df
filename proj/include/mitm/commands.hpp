// Copyright 2026 The mitm-optomech Authors
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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mitm/adjudication.hpp"
#include "mitm/run_config.hpp"

namespace mitm {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitAssertion = 4;
inline constexpr int kExitInfeasible = 5;

/// Where a command's RunConfig comes from. Layers apply in order: preset,
/// then config file, then `key=value` overrides.
struct ConfigSource {
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> config_file;
  std::vector<std::string> overrides;
};

RunConfig load_run_config(const ConfigSource& source);

struct ChiOptions {
  ConfigSource source;
  std::string engine;              // "", "closed", "oracle" or "both"
  std::optional<double> delta_p;   // units of γ
  bool plain = false;
};

struct SweepOptions {
  ConfigSource source;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::filesystem::path> boundary_path;
  std::optional<std::filesystem::path> region_path;
  double region_threshold = 1.0;
  unsigned threads = 0;
};

struct OptimizeCommandOptions {
  ConfigSource source;
  unsigned threads = 0;
};

struct AdjudicateOptions {
  std::size_t points = 100;
  std::uint64_t seed = kDefaultAdjudicationSeed;
  std::optional<std::filesystem::path> out_path;
};

// Each command writes its result to `out`, diagnostics to `err`, and
// returns the process exit code.
int cmd_chi(const ChiOptions& options, std::ostream& out, std::ostream& err);
int cmd_case_study(const std::string& name, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_optimize(const OptimizeCommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_adjudicate(const AdjudicateOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const ConfigSource& source, std::ostream& out, std::ostream& err);
int cmd_dump(const ConfigSource& source, std::ostream& out, std::ostream& err);
int cmd_config(const ConfigSource& source, std::ostream& out, std::ostream& err);
int cmd_presets(std::ostream& out);

}  // namespace mitm
