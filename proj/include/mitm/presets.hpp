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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mitm/run_config.hpp"

namespace mitm {

struct NamedPreset {
  std::string_view name;
  std::string_view summary;
  std::string_view config_text;
};

/// Figure-reproduction and operating-point presets (fig2a, fig2b, fig3,
/// fig4a, fig4b, fig2a-point) plus the two case studies.
std::span<const NamedPreset> presets();

/// Throws ConfigError for an unknown name.
RunConfig preset_config(std::string_view name);

struct ExpectedValue {
  std::string_view field;       // CouplingReport / derived field name
  double value = 0.0;
  double rel_tolerance = 0.0;
  bool asserted = false;        // false: printed for comparison only
};

struct CaseStudy {
  std::string_view name;
  std::vector<ExpectedValue> expected;
  std::vector<std::string_view> assumptions;
};

std::span<const CaseStudy> case_studies();
const CaseStudy* find_case_study(std::string_view name);

}  // namespace mitm
