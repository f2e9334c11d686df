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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mitm/adjudication.hpp"
#include "mitm/cavity_optomech.hpp"
#include "mitm/sweep_search.hpp"

namespace mitm {

using nlohmann::json;

/// 12 significant digits; empty for NaN.
std::string format_csv_number(double value);

json to_json(cplx value);
json to_json(const LambdaDriveParams& params);

/// Flat object with SI values and a `units` sub-object.
json to_json(const CouplingReport& report);
json to_json(const AdjudicationReport& report);
json boundary_to_json(const SweepConfig& config, const std::vector<BoundaryPoint>& boundary);
json region_to_json(const SweepConfig& config, const std::vector<SweepRecord>& grid,
                    const SpscRegion& region, double threshold);
json to_json(const OptimizeResult& result, const std::vector<ParameterBound>& bounds);

/// Unit label of a sweep coordinate ("gamma", "dimensionless", "1/m^3").
std::string_view axis_unit(SweepParameter parameter);

/// `#units:` comment line, header row, then one row per record.
void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                     const std::vector<SweepRecord>& records);

}  // namespace mitm
