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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mitm/cavity_optomech.hpp"
#include "mitm/engine.hpp"
#include "mitm/lambda_medium.hpp"

namespace mitm {

enum class SweepParameter { DeltaP, OmegaMu, PumpR, S0, NumberDensity, DeltaMu };
enum class AxisScale { Linear, Log };

std::string_view to_string(SweepParameter parameter);
SweepParameter sweep_parameter_from_string(std::string_view name);
std::string_view to_string(AxisScale scale);
AxisScale axis_scale_from_string(std::string_view name);

/// One sweep dimension. Rates are in units of γ; s₀ is dimensionless and
/// number density is in 1/m³. start == stop collapses the axis to a single
/// point regardless of `points`.
struct SweepAxis {
  SweepParameter parameter = SweepParameter::DeltaP;
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 2;
  AxisScale scale = AxisScale::Linear;

  void validate() const;
  std::vector<double> values() const;
};

inline constexpr std::size_t kMaxGridPoints = 1'000'000;

enum class CdrMode { Baseline, Physical };
std::string_view to_string(CdrMode mode);
CdrMode cdr_mode_from_string(std::string_view name);

/// Everything coupling_report needs besides χ.
struct PhysicalSetup {
  CavitySpec cavity;
  MembraneSpec membrane;
  MechanicalMode mode;
  double temperature = 0.0;
  std::optional<double> kappa_ratio_override;
};

/// Baseline: g_om/κ′ = Re(χ_NDD)·baseline_factor, the fixed host-coupling
/// assumption g_om,h/(κ′(ε_h − 1)) = 10⁻³. Physical: the full coupling chain.
struct CdrModel {
  CdrMode mode = CdrMode::Baseline;
  double baseline_factor = 1e-3;
  std::optional<PhysicalSetup> physical;

  void validate() const;
};

/// Fixed parameters of a sweep. `drive` is in units of γ (γ1 = γ2 = 1 for
/// the closed engine). When `dopant` is set, s₀ follows from its density.
struct SweepConfig {
  std::vector<SweepAxis> axes;
  LambdaDriveParams drive;
  double s0 = 3.0 / 1.66;
  std::optional<DopantSpec> dopant;
  CdrModel model;
  Engine engine = Engine::Oracle;
  ChiFormula formula = ChiFormula::Printed;
  double dephasing_2 = 0.0;

  void validate() const;
  std::size_t grid_size() const;
};

enum SweepFlag : unsigned {
  kFlagGain = 1u << 0,
  kFlagLoss = 1u << 1,
  kFlagPole = 1u << 2,
  kFlagNonlinear = 1u << 3,
  kFlagLasing = 1u << 4,
};

std::string flag_string(unsigned flags);

struct SweepRecord {
  std::vector<double> coordinates;
  cplx chi_p;
  std::optional<cplx> chi_ndd;  // absent for pole-flagged records
  double cdr = 0.0;             // signed g_om/κ′
  double cdr_modulus = 0.0;
  double cdr_argument = 0.0;    // 0 or π
  unsigned flags = 0;
};

/// Applies axis values to a copy of the fixed parameters and evaluates
/// χp → χ_NDD → CDR. Poles become flags, never exceptions.
SweepRecord evaluate_point(const SweepConfig& config, std::span<const double> coordinates);

/// Full grid in row-major order (last axis fastest). Grid points are
/// evaluated on up to `threads` workers; 0 means sweep_threads().
/// Throws GridTooLarge beyond kMaxGridPoints.
std::vector<SweepRecord> sweep(const SweepConfig& config, unsigned threads = 0);

struct BoundaryPoint {
  std::vector<double> coordinates;
  double chi_ndd_imag = 0.0;
};

inline constexpr double kBoundaryTolerance = 1e-6;

/// Gain/loss boundary of a 2-D sweep: every grid edge across which Im χ_NDD
/// changes sign is bisected on the continuous model until |Im χ_NDD| <
/// kBoundaryTolerance. Crossings that turn out to be poles are dropped.
/// Empty result means no boundary.
std::vector<BoundaryPoint> gain_boundary(const SweepConfig& config,
                                         const std::vector<SweepRecord>& grid);

struct SpscRegion {
  std::vector<std::size_t> members;  // indices into the grid
  std::vector<std::pair<double, double>> bounding_box;  // per axis
  bool empty() const { return members.empty(); }
};

/// Points with cdr_modulus > threshold and Im χ_NDD ≤ 0.
SpscRegion find_spsc_region(const std::vector<SweepRecord>& grid, double threshold = 1.0);

struct ParameterBound {
  SweepParameter parameter;
  double lo = 0.0;
  double hi = 0.0;
};

struct OptimizeOptions {
  std::size_t grid_points = 64;
  int rounds = 3;
  double pole_margin = 1e-3;  // minimum |1 − χp/3|
  int golden_iterations = 60;
};

struct OptimizeResult {
  std::vector<double> coordinates;  // same order as the bounds
  double value = 0.0;               // |g_om/κ′|
  SweepRecord record;
  double gain_slack = 0.0;          // −Im χ_NDD ≥ 0
};

/// Maximises |g_om/κ′| subject to Im χ_NDD ≤ 0 and |1 − χp/3| ≥ pole_margin:
/// a coarse grid followed by rounds of golden-section coordinate ascent
/// inside one grid cell of the incumbent. Throws NoFeasiblePoint.
OptimizeResult optimize_cdr(const SweepConfig& base, const std::vector<ParameterBound>& bounds,
                            const OptimizeOptions& options = {}, unsigned threads = 0);

}  // namespace mitm
