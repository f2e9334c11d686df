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

#include "mitm/lambda_medium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "mitm/constants.hpp"
#include "mitm/errors.hpp"

namespace mitm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void LambdaDriveParams::validate() const {
  for (double v : {gamma1, gamma2, pump_r, omega_mu, omega_p, delta_p, delta_mu})
    require(std::isfinite(v), "Λ parameters must be finite");
  require(gamma1 >= 0.0, "gamma1 must be >= 0");
  require(gamma2 >= 0.0, "gamma2 must be >= 0");
  require(pump_r >= 0.0, "pump_r must be >= 0");
  require(omega_mu >= 0.0, "omega_mu must be >= 0");
  require(omega_p >= 0.0, "omega_p must be >= 0");
}

double LambdaDriveParams::natural_scale() const {
  return std::max({gamma1, gamma2, pump_r, omega_mu, omega_p, std::abs(delta_p),
                   std::abs(delta_mu)});
}

void DopantSpec::validate() const {
  require(std::isfinite(number_density) && number_density >= 0.0,
          "number_density must be >= 0");
  require(std::isfinite(transition_wavelength) && transition_wavelength > 0.0,
          "transition_wavelength must be > 0");
  require(std::isfinite(host_eps_real) && host_eps_real >= 1.0, "host_eps_real must be >= 1");
  if (dipole_moment) require(*dipole_moment >= 0.0, "dipole_moment must be >= 0");
}

Susceptibility::Susceptibility(cplx value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw Error(fmt::format("non-finite susceptibility ({}, {})", value.real(), value.imag()));
}

std::string_view to_string(ChiFormula formula) {
  switch (formula) {
    case ChiFormula::Printed: return "printed";
    case ChiFormula::FlippedCoherence: return "flipped_coherence";
  }
  return "printed";
}

ChiFormula chi_formula_from_string(std::string_view name) {
  if (name == "printed") return ChiFormula::Printed;
  if (name == "flipped_coherence") return ChiFormula::FlippedCoherence;
  throw InvalidArgument(fmt::format("unknown chi formula '{}'", name));
}

std::string FormulaVariant::name() const {
  std::string out = flip_coherence_term ? "flipped_coherence" : "printed";
  if (flip_detunings) out += "+flipped_detunings";
  if (conjugate) out += "+conjugate";
  return out;
}

double s0_from_density(const DopantSpec& dopant) {
  dopant.validate();
  const double lambda3 = std::pow(dopant.transition_wavelength, 3);
  return 3.0 * dopant.number_density * lambda3 /
         (8.0 * constants::pi * constants::pi * std::sqrt(dopant.host_eps_real));
}

double density_from_s0(double s0, double wavelength, double host_eps_real) {
  if (!(wavelength > 0.0) || !(host_eps_real >= 1.0) || !(s0 >= 0.0))
    throw InvalidArgument("density_from_s0: invalid input");
  return s0 * 8.0 * constants::pi * constants::pi * std::sqrt(host_eps_real) /
         (3.0 * std::pow(wavelength, 3));
}

double gamma_from_dipole(double dipole, double omega_a, double eps_h) {
  if (!(dipole >= 0.0) || !(omega_a >= 0.0) || !(eps_h >= 1.0))
    throw InvalidArgument("gamma_from_dipole: inputs must be >= 0 and eps_h >= 1");
  using namespace constants;
  return 4.0 * std::pow(omega_a, 3) * dipole * dipole * std::sqrt(eps_h) /
         (6.0 * pi * vacuum_permittivity * hbar * std::pow(speed_of_light, 3));
}

Susceptibility chi_p_closed(const LambdaDriveParams& params, double s0, ChiFormula formula) {
  FormulaVariant variant;
  variant.flip_coherence_term = formula == ChiFormula::FlippedCoherence;
  return chi_p_closed(params, s0, variant);
}

Susceptibility chi_p_closed(const LambdaDriveParams& params, double s0,
                            const FormulaVariant& variant) {
  params.validate();
  if (params.gamma1 != params.gamma2)
    throw ClosedFormAssumption(
        "closed-form susceptibility assumes gamma1 == gamma2; use the master-equation engine");
  const double gamma = params.gamma1;
  if (!(gamma > 0.0)) throw InvalidArgument("closed-form susceptibility needs gamma > 0");
  if (!std::isfinite(s0)) throw InvalidArgument("s0 must be finite");

  const double sign = variant.flip_detunings ? -1.0 : 1.0;
  const double dp = sign * params.delta_p;
  const double dmu = sign * params.delta_mu;
  const double r = params.pump_r;
  const double om2 = params.omega_mu * params.omega_mu;
  const cplx i{0.0, 1.0};

  const cplx ground = r - 2.0 * i * dmu;
  const cplx raman = r + gamma - 2.0 * i * (dp + dmu);
  const double coherence_sign = variant.flip_coherence_term ? -1.0 : 1.0;

  const cplx numerator = 2.0 * i * ground * raman - coherence_sign * 8.0 * i * om2;
  const cplx denominator = ground * ((gamma - 2.0 * i * dp) * raman + 4.0 * om2);

  const double scale = std::max({gamma, r, params.omega_mu, std::abs(dp), std::abs(dmu)});
  if (std::abs(denominator) < kClosedFormPoleTolerance * scale * scale * scale)
    throw PoleError(fmt::format("closed-form susceptibility pole (|denominator| = {:.3g})",
                                std::abs(denominator)));

  cplx chi = -s0 * gamma * numerator / denominator;
  if (variant.conjugate) chi = std::conj(chi);
  return Susceptibility(chi);
}

Susceptibility ndd_transform(const Susceptibility& chi_p) {
  const cplx chi = chi_p.value();
  const cplx gap = 1.0 - chi / 3.0;
  if (std::abs(gap) <= kNddPoleTolerance)
    throw NddPoleError(fmt::format("local-field pole: chi_p = {} {:+}i", chi.real(), chi.imag()),
                       chi.real(), chi.imag());
  return Susceptibility(chi / gap);
}

Susceptibility ndd_inverse(const Susceptibility& chi_ndd) {
  const cplx chi = chi_ndd.value();
  const cplx gap = 1.0 + chi / 3.0;
  if (std::abs(gap) <= kNddPoleTolerance)
    throw NddPoleError("inverse local-field map is singular at chi = -3", chi.real(), chi.imag());
  return Susceptibility(chi / gap);
}

}  // namespace mitm
