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

#include "mitm/sweep_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "mitm/errors.hpp"
#include "mitm/lindblad_oracle.hpp"
#include "mitm/parallel.hpp"

namespace mitm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Named {
  SweepParameter parameter;
  std::string_view name;
};

constexpr Named kParameterNames[] = {
    {SweepParameter::DeltaP, "delta_p"},
    {SweepParameter::OmegaMu, "omega_mu"},
    {SweepParameter::PumpR, "pump_r"},
    {SweepParameter::S0, "s0"},
    {SweepParameter::NumberDensity, "number_density"},
    {SweepParameter::DeltaMu, "delta_mu"},
};

}  // namespace

std::string_view to_string(SweepParameter parameter) {
  for (const auto& n : kParameterNames)
    if (n.parameter == parameter) return n.name;
  return "?";
}

SweepParameter sweep_parameter_from_string(std::string_view name) {
  for (const auto& n : kParameterNames)
    if (n.name == name) return n.parameter;
  throw InvalidArgument(fmt::format("unknown sweep parameter '{}'", name));
}

std::string_view to_string(AxisScale scale) { return scale == AxisScale::Log ? "log" : "linear"; }

AxisScale axis_scale_from_string(std::string_view name) {
  if (name == "linear") return AxisScale::Linear;
  if (name == "log") return AxisScale::Log;
  throw InvalidArgument(fmt::format("unknown axis scale '{}'", name));
}

std::string_view to_string(CdrMode mode) {
  return mode == CdrMode::Physical ? "physical" : "baseline";
}

CdrMode cdr_mode_from_string(std::string_view name) {
  if (name == "baseline") return CdrMode::Baseline;
  if (name == "physical") return CdrMode::Physical;
  throw InvalidArgument(fmt::format("unknown cdr mode '{}'", name));
}

void SweepAxis::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw InvalidArgument("sweep axis bounds must be finite");
  if (start > stop)
    throw InvalidArgument(fmt::format("sweep axis '{}': start must not exceed stop",
                                      to_string(parameter)));
  if (points < 2 && start != stop)
    throw InvalidArgument("sweep axis needs at least 2 points");
  if (points > kMaxGridPoints)
    throw GridTooLarge(fmt::format("axis with {} points exceeds {}", points, kMaxGridPoints));
  if (scale == AxisScale::Log && !(start > 0.0))
    throw InvalidArgument("log-scaled axis needs start > 0");
}

std::vector<double> SweepAxis::values() const {
  validate();
  if (start == stop) return {start};
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    out[i] = scale == AxisScale::Log ? start * std::pow(stop / start, t)
                                     : start + (stop - start) * t;
  }
  out.back() = stop;
  return out;
}

void CdrModel::validate() const {
  if (!(baseline_factor > 0.0) || !std::isfinite(baseline_factor))
    throw InvalidArgument("baseline_factor must be > 0");
  if (mode == CdrMode::Physical && !physical)
    throw InvalidArgument("physical CDR mode needs cavity, membrane and mechanics");
}

void SweepConfig::validate() const {
  if (axes.size() > 3) throw InvalidArgument("at most three sweep axes are supported");
  for (const auto& a : axes) a.validate();
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = i + 1; j < axes.size(); ++j)
      if (axes[i].parameter == axes[j].parameter)
        throw InvalidArgument("sweep axes must be distinct parameters");
  drive.validate();
  if (dopant) dopant->validate();
  for (const auto& a : axes)
    if (a.parameter == SweepParameter::NumberDensity && !dopant)
      throw InvalidArgument("number_density axis needs a dopant specification");
  model.validate();
  if (!(dephasing_2 >= 0.0)) throw InvalidArgument("dephasing rate must be >= 0");
  if (grid_size() > kMaxGridPoints)
    throw GridTooLarge(fmt::format("grid of {} points exceeds {}", grid_size(), kMaxGridPoints));
}

std::size_t SweepConfig::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : axes) {
    const std::size_t m = a.start == a.stop ? 1 : a.points;
    if (m != 0 && n > kMaxGridPoints * 10 / m) return kMaxGridPoints * 10;
    n *= m;
  }
  return n;
}

std::string flag_string(unsigned flags) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (!(flags & bit)) return;
    if (!out.empty()) out += '+';
    out += name;
  };
  add(kFlagPole, "pole");
  add(kFlagGain, "gain");
  add(kFlagLoss, "loss");
  add(kFlagLasing, "lasing");
  add(kFlagNonlinear, "nonlinear");
  return out;
}

SweepRecord evaluate_point(const SweepConfig& config, std::span<const double> coordinates) {
  if (coordinates.size() != config.axes.size())
    throw InvalidArgument("coordinate count does not match the sweep axes");

  LambdaDriveParams drive = config.drive;
  std::optional<DopantSpec> dopant = config.dopant;
  double s0 = config.s0;
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    const double v = coordinates[i];
    switch (config.axes[i].parameter) {
      case SweepParameter::DeltaP: drive.delta_p = v; break;
      case SweepParameter::OmegaMu: drive.omega_mu = v; break;
      case SweepParameter::PumpR: drive.pump_r = v; break;
      case SweepParameter::DeltaMu: drive.delta_mu = v; break;
      case SweepParameter::S0: s0 = v; break;
      case SweepParameter::NumberDensity: dopant->number_density = v; break;
    }
  }
  if (dopant && std::none_of(config.axes.begin(), config.axes.end(), [](const SweepAxis& a) {
        return a.parameter == SweepParameter::S0;
      }))
    s0 = s0_from_density(*dopant);

  SweepRecord rec;
  rec.coordinates.assign(coordinates.begin(), coordinates.end());
  rec.cdr = rec.cdr_modulus = rec.cdr_argument = kNaN;

  try {
    if (config.engine == Engine::Closed) {
      rec.chi_p = chi_p_closed(drive, s0, config.formula).value();
    } else {
      const NumericChi numeric = chi_p_numeric(drive, s0, config.dephasing_2);
      rec.chi_p = numeric.chi.value();
      if (numeric.nonlinear) rec.flags |= kFlagNonlinear;
    }
  } catch (const PoleError&) {
    rec.chi_p = {kNaN, kNaN};
    rec.flags |= kFlagPole;
    return rec;
  } catch (const DegenerateSteadyState&) {
    rec.chi_p = {kNaN, kNaN};
    rec.flags |= kFlagPole;
    return rec;
  }

  if (ndd_pole_distance(rec.chi_p) <= kNddPoleTolerance) {
    rec.flags |= kFlagPole;
    return rec;
  }
  const Susceptibility chi_ndd = ndd_transform(Susceptibility(rec.chi_p));
  rec.chi_ndd = chi_ndd.value();
  if (chi_ndd.imag() < 0.0) rec.flags |= kFlagGain;
  if (chi_ndd.imag() > 0.0) rec.flags |= kFlagLoss;

  if (config.model.mode == CdrMode::Baseline) {
    rec.cdr = chi_ndd.real() * config.model.baseline_factor;
  } else {
    const PhysicalSetup& ph = *config.model.physical;
    try {
      rec.cdr = coupling_report(ph.cavity, ph.membrane, ph.mode, chi_ndd, ph.temperature,
                                ph.kappa_ratio_override)
                    .cdr;
    } catch (const LasingThreshold&) {
      rec.flags |= kFlagLasing;
      return rec;
    }
  }
  rec.cdr_modulus = std::abs(rec.cdr);
  rec.cdr_argument = rec.cdr < 0.0 ? std::numbers::pi : 0.0;
  return rec;
}

namespace {

std::vector<std::vector<double>> axis_values(const SweepConfig& config) {
  std::vector<std::vector<double>> out;
  for (const auto& a : config.axes) out.push_back(a.values());
  return out;
}

std::vector<double> coordinates_at(const std::vector<std::vector<double>>& values,
                                   std::size_t index) {
  std::vector<double> coords(values.size());
  for (std::size_t d = values.size(); d-- > 0;) {
    coords[d] = values[d][index % values[d].size()];
    index /= values[d].size();
  }
  return coords;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepConfig& config, unsigned threads) {
  config.validate();
  const auto values = axis_values(config);
  const std::size_t total = config.grid_size();
  std::vector<SweepRecord> out(total);
  parallel_for(total, threads, [&](std::size_t i) {
    const auto coords = coordinates_at(values, i);
    out[i] = evaluate_point(config, coords);
  });
  return out;
}

namespace {

std::optional<double> imag_ndd(const SweepRecord& r) {
  if (!r.chi_ndd) return std::nullopt;
  return r.chi_ndd->imag();
}

std::optional<BoundaryPoint> bisect_edge(const SweepConfig& config, std::vector<double> lo,
                                         std::vector<double> hi, std::size_t axis, double f_lo) {
  double a = lo[axis];
  double b = hi[axis];
  std::vector<double> x = lo;
  for (int it = 0; it < 200; ++it) {
    x[axis] = 0.5 * (a + b);
    const SweepRecord rec = evaluate_point(config, x);
    const auto f = imag_ndd(rec);
    if (!f) return std::nullopt;
    if (std::abs(*f) < kBoundaryTolerance) return BoundaryPoint{x, *f};
    if (x[axis] == a || x[axis] == b) break;
    if ((*f < 0.0) == (f_lo < 0.0)) {
      a = x[axis];
      f_lo = *f;
    } else {
      b = x[axis];
    }
  }
  // The sign change came from a pole rather than a zero.
  return std::nullopt;
}

}  // namespace

std::vector<BoundaryPoint> gain_boundary(const SweepConfig& config,
                                         const std::vector<SweepRecord>& grid) {
  if (config.axes.size() != 2) throw InvalidArgument("gain_boundary needs a 2-D sweep");
  const auto values = axis_values(config);
  const std::size_t n0 = values[0].size();
  const std::size_t n1 = values[1].size();
  if (grid.size() != n0 * n1) throw InvalidArgument("grid does not match the sweep axes");

  std::vector<BoundaryPoint> out;
  auto at = [&](std::size_t i, std::size_t j) -> const SweepRecord& { return grid[i * n1 + j]; };
  auto try_edge = [&](const SweepRecord& p, const SweepRecord& q, std::size_t axis) {
    const auto fp = imag_ndd(p);
    const auto fq = imag_ndd(q);
    if (!fp || !fq) return;
    if (std::abs(*fp) < kBoundaryTolerance) {
      // Grid point on the boundary; reported from the edge where it is `p`.
      out.push_back({p.coordinates, *fp});
      return;
    }
    if (std::abs(*fq) < kBoundaryTolerance) return;
    if ((*fp < 0.0) == (*fq < 0.0)) return;
    if (auto pt = bisect_edge(config, p.coordinates, q.coordinates, axis, *fp))
      out.push_back(std::move(*pt));
  };

  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      if (j + 1 < n1) try_edge(at(i, j), at(i, j + 1), 1);
      if (i + 1 < n0) try_edge(at(i, j), at(i + 1, j), 0);
    }
  }
  // A grid point on the boundary may have been reported by two edges.
  std::sort(out.begin(), out.end(), [](const BoundaryPoint& a, const BoundaryPoint& b) {
    return a.coordinates < b.coordinates;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const BoundaryPoint& a, const BoundaryPoint& b) {
                          return a.coordinates == b.coordinates;
                        }),
            out.end());
  return out;
}

SpscRegion find_spsc_region(const std::vector<SweepRecord>& grid, double threshold) {
  SpscRegion region;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SweepRecord& r = grid[i];
    if (!r.chi_ndd || !(r.cdr_modulus > threshold) || r.chi_ndd->imag() > 0.0) continue;
    if (region.members.empty()) {
      for (double c : r.coordinates) region.bounding_box.emplace_back(c, c);
    } else {
      for (std::size_t d = 0; d < r.coordinates.size(); ++d) {
        region.bounding_box[d].first = std::min(region.bounding_box[d].first, r.coordinates[d]);
        region.bounding_box[d].second = std::max(region.bounding_box[d].second, r.coordinates[d]);
      }
    }
    region.members.push_back(i);
  }
  return region;
}

namespace {

double feasible_value(const SweepRecord& r, double pole_margin) {
  constexpr double kInfeasible = -std::numeric_limits<double>::infinity();
  if (!r.chi_ndd || !std::isfinite(r.cdr_modulus)) return kInfeasible;
  if (r.chi_ndd->imag() > 0.0) return kInfeasible;
  if (ndd_pole_distance(r.chi_p) < pole_margin) return kInfeasible;
  return r.cdr_modulus;
}

}  // namespace

OptimizeResult optimize_cdr(const SweepConfig& base, const std::vector<ParameterBound>& bounds,
                            const OptimizeOptions& options, unsigned threads) {
  if (bounds.empty() || bounds.size() > 3)
    throw InvalidArgument("optimize_cdr needs between one and three bounded parameters");
  if (options.grid_points < 2) throw InvalidArgument("optimizer grid needs >= 2 points");

  SweepConfig config = base;
  config.axes.clear();
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi)
      throw InvalidArgument(fmt::format("invalid bounds for '{}'", to_string(b.parameter)));
    config.axes.push_back({b.parameter, b.lo, b.hi, options.grid_points, AxisScale::Linear});
  }
  config.validate();

  const auto grid = sweep(config, threads);
  std::size_t best_index = grid.size();
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = feasible_value(grid[i], options.pole_margin);
    if (v > best_value) {
      best_value = v;
      best_index = i;
    }
  }
  if (best_index == grid.size())
    throw NoFeasiblePoint("no grid point satisfies the gain constraint away from the pole");

  std::vector<double> x = grid[best_index].coordinates;
  SweepRecord best_record = grid[best_index];

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int round = 0; round < options.rounds; ++round) {
    for (std::size_t d = 0; d < bounds.size(); ++d) {
      const auto& b = bounds[d];
      if (b.lo == b.hi) continue;
      const double cell = (b.hi - b.lo) / static_cast<double>(options.grid_points - 1);
      double a = std::max(b.lo, x[d] - cell);
      double c = std::min(b.hi, x[d] + cell);

      auto probe = [&](double t) {
        std::vector<double> y = x;
        y[d] = t;
        SweepRecord rec = evaluate_point(config, y);
        const double v = feasible_value(rec, options.pole_margin);
        if (v > best_value) {
          best_value = v;
          best_record = rec;
        }
        return v;
      };

      double p = c - inv_phi * (c - a);
      double q = a + inv_phi * (c - a);
      double fp = probe(p);
      double fq = probe(q);
      for (int it = 0; it < options.golden_iterations; ++it) {
        if (fp >= fq) {
          c = q;
          q = p;
          fq = fp;
          p = c - inv_phi * (c - a);
          fp = probe(p);
        } else {
          a = p;
          p = q;
          fp = fq;
          q = a + inv_phi * (c - a);
          fq = probe(q);
        }
      }
      x = best_record.coordinates;
    }
  }

  OptimizeResult result;
  result.coordinates = best_record.coordinates;
  result.value = best_value;
  result.gain_slack = -best_record.chi_ndd->imag();
  result.record = std::move(best_record);
  return result;
}

}  // namespace mitm
