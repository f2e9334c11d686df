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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mitm/errors.hpp"
#include "mitm/lindblad_oracle.hpp"
#include "mitm/presets.hpp"
#include "mitm/run_config.hpp"
#include "mitm/sweep_search.hpp"

using namespace mitm;

namespace {

SweepConfig preset_sweep(std::string_view name) {
  return sweep_config(resolve(preset_config(name)));
}

bool same(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same_record(const SweepRecord& a, const SweepRecord& b) {
  return a.coordinates == b.coordinates && same(a.chi_p.real(), b.chi_p.real()) &&
         same(a.chi_p.imag(), b.chi_p.imag()) && a.chi_ndd == b.chi_ndd && same(a.cdr, b.cdr) &&
         same(a.cdr_modulus, b.cdr_modulus) && same(a.cdr_argument, b.cdr_argument) &&
         a.flags == b.flags;
}

SweepConfig shrink(SweepConfig c, std::size_t points) {
  for (auto& a : c.axes) a.points = points;
  return c;
}

}  // namespace

TEST_CASE("sweep axes") {
  SweepAxis lin{SweepParameter::DeltaP, -2.0, 2.0, 5, AxisScale::Linear};
  CHECK(lin.values() == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
  SweepAxis lg{SweepParameter::OmegaMu, 0.01, 1.0, 3, AxisScale::Log};
  const auto v = lg.values();
  CHECK(v.front() == 0.01);
  CHECK(v[1] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(v.back() == 1.0);
  SweepAxis point{SweepParameter::DeltaP, 0.3, 0.3, 50, AxisScale::Linear};
  CHECK(point.values() == std::vector<double>{0.3});
  SweepAxis bad{SweepParameter::OmegaMu, -1.0, 1.0, 3, AxisScale::Log};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);

  SweepConfig big = preset_sweep("fig3");
  big.axes[0].points = 1001;
  big.axes[1].points = 1000;
  CHECK_THROWS_AS(big.validate(), GridTooLarge);
  big.axes[1].points = 999;
  CHECK_NOTHROW(big.validate());
}

TEST_CASE("Er line reproduces the enhanced dispersion") {
  const SweepConfig fig2a = preset_sweep("fig2a");
  const auto grid = sweep(fig2a);
  REQUIRE(grid.size() == 2001);

  // A run of consecutive points with strong dispersion and gain.
  std::size_t run = 0, best_run = 0;
  double best_dp = 0.0;
  double max_a = 0.0;
  for (const auto& r : grid) {
    if (r.chi_ndd) max_a = std::max(max_a, std::abs(r.chi_ndd->real()));
    const bool hit = r.chi_ndd && r.chi_ndd->real() > 1e3 && r.chi_ndd->imag() <= 0.0;
    run = hit ? run + 1 : 0;
    if (run > best_run) {
      best_run = run;
      best_dp = r.coordinates[0];
    }
  }
  CHECK(best_run >= 1);
  CHECK(best_dp == doctest::Approx(0.3).epsilon(0.05));

  const auto weak = sweep(preset_sweep("fig2b"));
  double max_b = 0.0;
  for (const auto& r : weak)
    if (r.chi_ndd) max_b = std::max(max_b, std::abs(r.chi_ndd->real()));
  CHECK(max_b * 10.0 <= max_a);
}

TEST_CASE("single-point sweep matches a direct evaluation") {
  SweepConfig c = preset_sweep("fig2a");
  c.axes[0].start = c.axes[0].stop = 0.30285;
  const auto grid = sweep(c);
  REQUIRE(grid.size() == 1);
  const double x = 0.30285;
  CHECK(same_record(grid[0], evaluate_point(c, std::span<const double>(&x, 1))));

  LambdaDriveParams d = c.drive;
  d.delta_p = x;
  CHECK(grid[0].chi_p == chi_p_closed(d, c.s0, c.formula).value());

  c.engine = Engine::Oracle;
  const auto oracle = sweep(c);
  CHECK(oracle[0].chi_p == chi_p_numeric(d, c.s0).chi.value());
}

TEST_CASE("sweep order and thread count do not change results") {
  for (auto name : {"fig3", "fig4a"}) {
    const SweepConfig c = shrink(preset_sweep(name), 25);
    const auto one = sweep(c, 1);
    const auto four = sweep(c, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(same_record(one[i], four[i]));
    for (std::size_t i = one.size(); i-- > 0;)
      CHECK(same_record(one[i], evaluate_point(c, one[i].coordinates)));
  }

  SweepConfig oracle = shrink(preset_sweep("fig3"), 6);
  oracle.engine = Engine::Oracle;
  const auto a = sweep(oracle, 1);
  const auto b = sweep(oracle, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_record(a[i], b[i]));
}

TEST_CASE("baseline phase is 0 or pi and follows the dispersion sign") {
  const SweepConfig c = shrink(preset_sweep("fig4b"), 80);
  const auto grid = sweep(c);
  for (const auto& r : grid) {
    if (!r.chi_ndd) continue;
    CHECK((r.cdr_argument == 0.0 || r.cdr_argument == std::numbers::pi));
    CHECK((r.cdr_argument == std::numbers::pi) == (r.chi_ndd->real() < 0.0));
    CHECK(r.cdr_modulus == doctest::Approx(std::abs(r.chi_ndd->real()) * 1e-3).epsilon(1e-14));
  }
}

TEST_CASE("pole handling") {
  SweepConfig c = preset_sweep("fig2a");
  c.drive.pump_r = 0.0;
  c.drive.delta_mu = 0.0;
  const double x = 0.3;
  const SweepRecord r = evaluate_point(c, std::span<const double>(&x, 1));
  CHECK((r.flags & kFlagPole) != 0);
  CHECK_FALSE(r.chi_ndd.has_value());
  CHECK(std::isnan(r.cdr_modulus));
  CHECK(flag_string(r.flags) == "pole");

  // Anything flagged on the standard grids is genuinely at a pole.
  for (auto name : {"fig2a", "fig3", "fig4a"}) {
    for (const auto& rec : sweep(shrink(preset_sweep(name), 60))) {
      if (!(rec.flags & kFlagPole)) continue;
      CHECK((std::isnan(rec.chi_p.real()) || ndd_pole_distance(rec.chi_p) <= kNddPoleTolerance));
    }
  }
}

TEST_CASE("gain boundary") {
  const SweepConfig c = preset_sweep("fig3");
  const auto grid = sweep(c);
  const auto boundary = gain_boundary(c, grid);
  REQUIRE_FALSE(boundary.empty());
  for (const auto& b : boundary) {
    const SweepRecord r = evaluate_point(c, b.coordinates);
    REQUIRE(r.chi_ndd.has_value());
    CHECK(std::abs(r.chi_ndd->imag()) < kBoundaryTolerance);
  }

  auto lossy = grid;
  for (auto& r : lossy) {
    r.chi_ndd = cplx(1.0, 1.0);
    r.flags = kFlagLoss;
  }
  CHECK(gain_boundary(c, lossy).empty());

  SweepConfig line = preset_sweep("fig2a");
  CHECK_THROWS_AS(gain_boundary(line, sweep(shrink(line, 10))), InvalidArgument);
}

TEST_CASE("strong-coupling region on the s0 by omega_mu grid") {
  const SweepConfig c = preset_sweep("fig4a");
  const auto grid = sweep(c);
  const SpscRegion region = find_spsc_region(grid);
  REQUIRE_FALSE(region.empty());
  const auto [lo, hi] = region.bounding_box[0];
  CHECK(lo >= 1.55);
  CHECK(hi <= 1.65);
  CHECK(lo <= 1.625);
  CHECK(hi >= 1.583);
  for (auto i : region.members) {
    CHECK(grid[i].cdr_modulus > 1.0);
    CHECK(grid[i].chi_ndd->imag() <= 0.0);
  }

  CHECK(find_spsc_region(grid, INFINITY).empty());

  // Shared grid points keep their membership when the grid is refined.
  SweepConfig fine = c;
  for (auto& a : fine.axes) a.points = 2 * a.points - 1;
  const auto fine_grid = sweep(fine);
  const SpscRegion refined = find_spsc_region(fine_grid);
  std::vector<bool> in_coarse(grid.size()), in_fine(fine_grid.size());
  for (auto i : region.members) in_coarse[i] = true;
  for (auto i : refined.members) in_fine[i] = true;
  const std::size_t n1 = c.axes[1].points, m1 = fine.axes[1].points;
  int flips = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t j = (2 * (i / n1)) * m1 + 2 * (i % n1);
    REQUIRE(fine_grid[j].coordinates[0] == doctest::Approx(grid[i].coordinates[0]).epsilon(1e-14));
    REQUIRE(fine_grid[j].coordinates[1] == doctest::Approx(grid[i].coordinates[1]).epsilon(1e-14));
    if (in_coarse[i] != in_fine[j]) ++flips;
  }
  CHECK(flips == 0);
  CHECK(refined.members.size() > region.members.size());
}

TEST_CASE("optimizer") {
  const ResolvedConfig fig3 = resolve(preset_config("fig3"));
  const SweepConfig base = sweep_config(fig3);

  SUBCASE("degenerate bounds reduce to a point evaluation") {
    SweepConfig line = preset_sweep("fig2a");
    const double x = 0.30285;
    const OptimizeResult r = optimize_cdr(line, {{SweepParameter::DeltaP, x, x}});
    const SweepRecord direct = evaluate_point(line, std::span<const double>(&x, 1));
    CHECK(r.value == direct.cdr_modulus);
    CHECK(r.coordinates == std::vector<double>{x});
  }

  SUBCASE("finds strong coupling inside the gain region") {
    const OptimizeResult r = optimize_cdr(base, fig3.bounds, fig3.optimize);
    CHECK(r.value >= 1.0);
    CHECK(r.gain_slack >= 0.0);
    REQUIRE(r.record.chi_ndd.has_value());
    CHECK(r.record.chi_ndd->imag() <= 0.0);
    CHECK(ndd_pole_distance(r.record.chi_p) >= fig3.optimize.pole_margin);
    for (std::size_t i = 0; i < r.coordinates.size(); ++i) {
      CHECK(r.coordinates[i] >= fig3.bounds[i].lo);
      CHECK(r.coordinates[i] <= fig3.bounds[i].hi);
    }

    const OptimizeResult again = optimize_cdr(base, fig3.bounds, fig3.optimize, 3);
    CHECK(again.coordinates == r.coordinates);
    CHECK(again.value == r.value);
  }

  SUBCASE("no feasible point when nothing has gain") {
    // The master equation only shows (weak) gain for pump rates near 2 gamma.
    SweepConfig oracle = base;
    oracle.engine = Engine::Oracle;
    OptimizeOptions small = fig3.optimize;
    small.grid_points = 12;
    auto bounds = fig3.bounds;
    for (auto& b : bounds)
      if (b.parameter == SweepParameter::PumpR) b.hi = 1.0;
    CHECK_THROWS_AS(optimize_cdr(oracle, bounds, small), NoFeasiblePoint);
  }

  CHECK_THROWS_AS(optimize_cdr(base, {{SweepParameter::PumpR, 1.0, 0.5}}), InvalidArgument);
}
