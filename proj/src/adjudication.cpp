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

#include "mitm/adjudication.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "mitm/errors.hpp"
#include "mitm/lindblad_oracle.hpp"

namespace mitm {

std::string_view to_string(Engine engine) {
  return engine == Engine::Closed ? "closed" : "oracle";
}

Engine engine_from_string(std::string_view name) {
  if (name == "closed") return Engine::Closed;
  if (name == "oracle") return Engine::Oracle;
  throw InvalidArgument(fmt::format("unknown engine '{}'", name));
}

namespace {

std::vector<FormulaVariant> all_variants() {
  std::vector<FormulaVariant> out;
  for (bool coherence : {false, true})
    for (bool detunings : {false, true})
      for (bool conj : {false, true}) out.push_back({coherence, detunings, conj});
  return out;
}

double relative_difference(cplx a, cplx reference) {
  const double scale = std::abs(reference);
  return scale > 0.0 ? std::abs(a - reference) / scale : std::abs(a);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

AdjudicationReport adjudicate_closed_form(std::size_t points, std::uint64_t seed,
                                          double tolerance) {
  if (points == 0) throw InvalidArgument("adjudication needs at least one point");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rate(0.05, 2.0);
  std::uniform_real_distribution<double> detuning(-2.0, 2.0);
  std::uniform_real_distribution<double> density(0.5, 2.0);

  std::vector<LambdaDriveParams> grid;
  std::vector<double> s0s;
  std::vector<cplx> oracle;
  for (std::size_t n = 0; n < points; ++n) {
    LambdaDriveParams p;
    p.gamma1 = p.gamma2 = 1.0;
    p.pump_r = rate(rng);
    p.omega_mu = rate(rng);
    p.delta_p = detuning(rng);
    p.delta_mu = detuning(rng);
    const double s0 = density(rng);
    grid.push_back(p);
    s0s.push_back(s0);
    oracle.push_back(chi_p_numeric(p, s0).chi.value());
  }

  LambdaDriveParams er;
  er.pump_r = 0.1;
  er.omega_mu = 1.0;
  er.delta_p = 0.30285;
  er.delta_mu = 0.4;
  const double er_s0 = 3.0 / 1.66;
  const cplx quoted{1181.45, -0.70};

  AdjudicationReport report;
  report.points = points;
  report.seed = seed;
  report.tolerance = tolerance;

  for (const FormulaVariant& variant : all_variants()) {
    VariantScore score;
    score.variant = variant;
    std::vector<double> diffs;
    for (std::size_t n = 0; n < points; ++n) {
      const cplx closed = chi_p_closed(grid[n], s0s[n], variant).value();
      diffs.push_back(relative_difference(closed, oracle[n]));
    }
    score.max_relative_difference = *std::max_element(diffs.begin(), diffs.end());
    score.median_relative_difference = median(diffs);
    score.matches_oracle = score.max_relative_difference < tolerance;
    score.operating_point_chi_ndd = ndd_transform(chi_p_closed(er, er_s0, variant)).value();
    score.matches_quoted_value =
        std::abs(score.operating_point_chi_ndd.real() - quoted.real()) <= 0.005 &&
        std::abs(score.operating_point_chi_ndd.imag() - quoted.imag()) <= 0.005;
    report.variants.push_back(score);
  }

  report.best_variant = static_cast<std::size_t>(
      std::min_element(report.variants.begin(), report.variants.end(),
                       [](const VariantScore& a, const VariantScore& b) {
                         return a.median_relative_difference < b.median_relative_difference;
                       }) -
      report.variants.begin());

  // variants[0] is the printed expression.
  report.printed_matches_oracle = report.variants.front().matches_oracle;
  for (std::size_t n = 0; n < points; ++n) {
    const cplx printed = chi_p_closed(grid[n], s0s[n], ChiFormula::Printed).value();
    const double diff = relative_difference(printed, oracle[n]);
    if (diff >= tolerance) report.discrepancies.push_back({grid[n], s0s[n], oracle[n], printed, diff});
  }
  report.recommended_engine = report.printed_matches_oracle ? Engine::Closed : Engine::Oracle;
  return report;
}

}  // namespace mitm
