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

#include "mitm/serialize.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace mitm {

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_csv_number(double value) {
  if (std::isnan(value)) return {};
  return fmt::format("{:.12g}", value);
}

json to_json(cplx value) {
  return {{"re", number_or_null(value.real())}, {"im", number_or_null(value.imag())}};
}

json to_json(const LambdaDriveParams& p) {
  return {{"gamma1", p.gamma1},     {"gamma2", p.gamma2},   {"pump_r", p.pump_r},
          {"omega_mu", p.omega_mu}, {"omega_p", p.omega_p}, {"delta_p", p.delta_p},
          {"delta_mu", p.delta_mu}};
}

json to_json(const CouplingReport& r) {
  json j;
  j["delta_omega"] = r.delta_omega;
  j["delta_kappa"] = r.delta_kappa;
  j["g_om_h"] = r.g_om_h;
  j["g_om_p"] = r.g_om_p;
  j["g_om"] = r.g_om;
  j["kappa"] = r.kappa;
  j["kappa_eff"] = r.kappa_eff;
  j["cdr"] = r.cdr;
  j["force_sign"] = std::string(to_string(r.force));
  j["n_thermal"] = r.n_thermal;
  j["mech_decoherence"] = r.mech_decoherence;
  j["c_quantum"] = number_or_null(r.c_quantum);
  j["kl"] = r.kl;
  j["thin_membrane_warning"] = r.thin_membrane_warning;
  j["units"] = {{"delta_omega", "rad/s"},
                {"delta_kappa", "rad/s"},
                {"g_om_h", "rad/s"},
                {"g_om_p", "rad/s"},
                {"g_om", "rad/s"},
                {"kappa", "rad/s"},
                {"kappa_eff", "rad/s"},
                {"cdr", "dimensionless"},
                {"force_sign", "attractive|repulsive|none"},
                {"n_thermal", "dimensionless"},
                {"mech_decoherence", "rad/s"},
                {"c_quantum", "dimensionless"},
                {"kl", "dimensionless"}};
  return j;
}

json to_json(const AdjudicationReport& report) {
  json variants = json::array();
  for (const auto& v : report.variants) {
    variants.push_back({{"variant", v.variant.name()},
                        {"max_relative_difference", v.max_relative_difference},
                        {"median_relative_difference", v.median_relative_difference},
                        {"matches_oracle", v.matches_oracle},
                        {"operating_point_chi_ndd", to_json(v.operating_point_chi_ndd)},
                        {"matches_quoted_value", v.matches_quoted_value}});
  }
  json discrepancies = json::array();
  for (const auto& d : report.discrepancies) {
    discrepancies.push_back({{"params_gamma_units", to_json(d.params)},
                             {"s0", d.s0},
                             {"oracle", to_json(d.oracle)},
                             {"printed", to_json(d.printed)},
                             {"relative_difference", d.relative_difference}});
  }
  return {{"points", report.points},
          {"seed", report.seed},
          {"tolerance", report.tolerance},
          {"printed_matches_oracle", report.printed_matches_oracle},
          {"best_matching_variant", report.variants.at(report.best_variant).variant.name()},
          {"recommended_engine", std::string(to_string(report.recommended_engine))},
          {"variants", variants},
          {"discrepancy_count", report.discrepancies.size()},
          {"discrepancies", discrepancies}};
}

std::string_view axis_unit(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::S0: return "dimensionless";
    case SweepParameter::NumberDensity: return "1/m^3";
    default: return "gamma";
  }
}

json boundary_to_json(const SweepConfig& config, const std::vector<BoundaryPoint>& boundary) {
  json points = json::array();
  for (const auto& p : boundary) {
    json pt;
    for (std::size_t d = 0; d < config.axes.size(); ++d)
      pt[std::string(to_string(config.axes[d].parameter))] = p.coordinates[d];
    pt["chi_ndd_im"] = p.chi_ndd_imag;
    points.push_back(pt);
  }
  return points;
}

json region_to_json(const SweepConfig& config, const std::vector<SweepRecord>& grid,
                    const SpscRegion& region, double threshold) {
  json box = json::object();
  for (std::size_t d = 0; d < region.bounding_box.size(); ++d)
    box[std::string(to_string(config.axes[d].parameter))] = {region.bounding_box[d].first,
                                                             region.bounding_box[d].second};
  json members = json::array();
  for (std::size_t i : region.members) {
    json pt;
    for (std::size_t d = 0; d < config.axes.size(); ++d)
      pt[std::string(to_string(config.axes[d].parameter))] = grid[i].coordinates[d];
    pt["cdr_mod"] = grid[i].cdr_modulus;
    members.push_back(pt);
  }
  return {{"threshold", number_or_null(threshold)},
          {"count", region.members.size()},
          {"bounding_box", box},
          {"members", members}};
}

json to_json(const OptimizeResult& result, const std::vector<ParameterBound>& bounds) {
  json best = json::object();
  json units = json::object();
  for (std::size_t d = 0; d < bounds.size(); ++d) {
    const std::string name(to_string(bounds[d].parameter));
    best[name] = result.coordinates[d];
    units[name] = std::string(axis_unit(bounds[d].parameter));
  }
  units["cdr"] = "dimensionless";
  units["gain_slack"] = "dimensionless";
  return {{"best", best},
          {"cdr_modulus", result.value},
          {"cdr", result.record.cdr},
          {"chi_p", to_json(result.record.chi_p)},
          {"chi_ndd", to_json(*result.record.chi_ndd)},
          {"gain_slack", result.gain_slack},
          {"units", units}};
}

void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                     const std::vector<SweepRecord>& records) {
  std::string units = "#units:";
  std::string header;
  for (const auto& a : config.axes) {
    units += fmt::format(" {}={},", to_string(a.parameter), axis_unit(a.parameter));
    header += fmt::format("{},", to_string(a.parameter));
  }
  units += " chi=dimensionless, cdr_mod=dimensionless, cdr_arg=rad\n";
  header += "chi_p_re,chi_p_im,chi_ndd_re,chi_ndd_im,cdr_mod,cdr_arg,flag\n";
  out << units << header;

  const double nan = std::nan("");
  std::string line;
  for (const auto& r : records) {
    line.clear();
    for (double c : r.coordinates) line += format_csv_number(c) + ',';
    line += format_csv_number(r.chi_p.real()) + ',' + format_csv_number(r.chi_p.imag()) + ',';
    const cplx ndd = r.chi_ndd.value_or(cplx(nan, nan));
    line += format_csv_number(ndd.real()) + ',' + format_csv_number(ndd.imag()) + ',';
    line += format_csv_number(r.cdr_modulus) + ',' + format_csv_number(r.cdr_argument) + ',';
    line += flag_string(r.flags);
    line += '\n';
    out << line;
  }
}

}  // namespace mitm
