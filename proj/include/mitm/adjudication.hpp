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
#include <vector>

#include "mitm/engine.hpp"
#include "mitm/lambda_medium.hpp"

namespace mitm {

/// Closed form vs. master-equation comparison on a random parameter grid.
/// Every sign/conjugation variant of the closed form is scored; a variant
/// "matches" when its relative difference to the oracle stays below
/// `tolerance` at every grid point.
struct AdjudicationPoint {
  LambdaDriveParams params;
  double s0 = 0.0;
  cplx oracle;
  cplx printed;
  double relative_difference = 0.0;
};

struct VariantScore {
  FormulaVariant variant;
  double max_relative_difference = 0.0;
  double median_relative_difference = 0.0;
  bool matches_oracle = false;
  /// χ_NDD at the Er³⁺ operating point (s₀ = 3/1.66, r = 0.1γ, Ωμ = γ,
  /// Δp = 0.30285γ, Δμ = 0.4γ) and whether it rounds to 1181.45 − 0.70i.
  cplx operating_point_chi_ndd;
  bool matches_quoted_value = false;
};

struct AdjudicationReport {
  std::size_t points = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  bool printed_matches_oracle = false;
  std::vector<VariantScore> variants;
  std::size_t best_variant = 0;  // index into variants, smallest median difference
  std::vector<AdjudicationPoint> discrepancies;  // printed formula vs oracle
  Engine recommended_engine = Engine::Oracle;
};

inline constexpr std::uint64_t kDefaultAdjudicationSeed = 20130611;

AdjudicationReport adjudicate_closed_form(std::size_t points = 100,
                                          std::uint64_t seed = kDefaultAdjudicationSeed,
                                          double tolerance = 1e-6);

}  // namespace mitm
