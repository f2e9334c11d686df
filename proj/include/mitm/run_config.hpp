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

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mitm/cavity_optomech.hpp"
#include "mitm/engine.hpp"
#include "mitm/lambda_medium.hpp"
#include "mitm/sweep_search.hpp"

namespace mitm {

struct KeySpec {
  std::string_view key;
  std::string_view default_value;  // empty: optional, no default
  std::string_view description;
};

/// Every key a RunConfig may contain.
std::span<const KeySpec> known_keys();

/// Flat `key = value` document with namespaced keys. Unknown keys are
/// rejected on insertion; `#` starts a comment.
class RunConfig {
 public:
  static RunConfig parse(std::string_view text, std::string_view origin = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  /// Inserts or replaces a key; throws ConfigError for unknown keys.
  void set(const std::string& key, const std::string& value);
  /// Parses `key=value` and calls set().
  void apply_override(std::string_view assignment);
  void erase(const std::string& key) { entries_.erase(key); }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Sorted `key = value` lines; numbers are written with 17 significant
  /// digits so parse(serialize()) reproduces every value.
  std::string serialize() const;

 private:
  std::map<std::string, std::string> entries_;
};

/// A RunConfig with defaults applied and units converted. Rates are in units
/// of γ; `gamma` is γ in rad/s when the config pins it.
struct ResolvedConfig {
  std::optional<double> gamma;
  LambdaDriveParams drive;
  double s0 = 0.0;
  std::optional<DopantSpec> dopant;

  CavitySpec cavity;
  MembraneSpec membrane;
  std::optional<double> mech_frequency;  // rad/s, bypasses the drum model
  double temperature = 0.0;

  Engine engine = Engine::Oracle;
  ChiFormula formula = ChiFormula::Printed;
  CdrMode cdr_mode = CdrMode::Baseline;
  double baseline_factor = 1e-3;
  std::optional<double> kappa_ratio_override;
  double dephasing_2 = 0.0;
  std::optional<cplx> pinned_chi_ndd;

  std::vector<SweepAxis> axes;
  std::vector<ParameterBound> bounds;
  OptimizeOptions optimize;
};

/// Throws ConfigError (exit 2) for malformed values, conflicting unit
/// variants or `_hz` rates without a known γ.
ResolvedConfig resolve(const RunConfig& config);

MechanicalMode mechanical_mode(const ResolvedConfig& config);
PhysicalSetup physical_setup(const ResolvedConfig& config);
SweepConfig sweep_config(const ResolvedConfig& config);

}  // namespace mitm
