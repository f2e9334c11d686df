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

#include "mitm/cavity_optomech.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "mitm/constants.hpp"
#include "mitm/errors.hpp"

namespace mitm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void CavitySpec::validate() const {
  require(std::isfinite(wavelength) && wavelength > 0.0, "cavity wavelength must be > 0");
  require(std::isfinite(length) && length >= wavelength, "cavity length must be >= wavelength");
  require(std::isfinite(quality_factor) && quality_factor > 0.0, "quality factor must be > 0");
  require(intrinsic_fraction > 0.0 && intrinsic_fraction <= 1.0,
          "intrinsic_fraction must lie in (0, 1]");
  if (finesse) require(*finesse > 0.0, "finesse must be > 0");
}

double CavitySpec::wavenumber() const { return 2.0 * constants::pi / wavelength; }

double CavitySpec::omega_c() const {
  return 2.0 * constants::pi * constants::speed_of_light / wavelength;
}

double CavitySpec::kappa() const { return omega_c() / quality_factor; }

double quality_from_finesse(double finesse, double length, double wavelength) {
  require(finesse > 0.0 && length > 0.0 && wavelength > 0.0,
          "finesse, length and wavelength must be > 0");
  return finesse * length / wavelength;
}

double Placement::phase(double wavenumber) const {
  if (kind == Kind::Position) return wavenumber * value;
  require(value >= 0.0 && value <= 1.0, "sin^2(kz0) must lie in [0, 1]");
  return std::asin(std::sqrt(value));
}

std::pair<double, double> Placement::sin_cos(double wavenumber) const {
  if (kind == Kind::Position) return {std::sin(wavenumber * value), std::cos(wavenumber * value)};
  require(value >= 0.0 && value <= 1.0, "sin^2(kz0) must lie in [0, 1]");
  return {std::sqrt(value), std::sqrt(1.0 - value)};
}

void MembraneSpec::validate() const {
  require(std::isfinite(thickness) && thickness >= 0.0, "membrane thickness must be >= 0");
  require(diameter >= 0.0, "membrane diameter must be >= 0");
  require(mass_density >= 0.0, "mass density must be >= 0");
  require(tensile_stress >= 0.0, "tensile stress must be >= 0");
  require(host_eps.real() >= 1.0, "host permittivity real part must be >= 1");
  require(host_eps.imag() >= 0.0, "host permittivity imaginary part must be >= 0");
  require(mech_quality > 0.0, "mechanical quality factor must be > 0");
  require(overlap_factor > 0.0 && overlap_factor <= 1.0, "overlap factor must lie in (0, 1]");
  if (placement.kind == Placement::Kind::Sin2)
    require(placement.value >= 0.0 && placement.value <= 1.0, "sin^2(kz0) must lie in [0, 1]");
}

MechanicalMode MechanicalMode::make(double mass, double frequency, double mech_quality) {
  require(mech_quality > 0.0, "mechanical quality factor must be > 0");
  MechanicalMode mode;
  mode.mass = mass;
  mode.frequency = frequency;
  mode.zero_point = zero_point_motion(mass, frequency);
  mode.damping = frequency / mech_quality;
  return mode;
}

double membrane_mass(const MembraneSpec& spec) {
  spec.validate();
  const double radius = 0.5 * spec.diameter;
  return constants::pi * radius * radius * spec.thickness * spec.mass_density;
}

double mechanical_frequency(const MembraneSpec& spec) {
  require(spec.tensile_stress > 0.0 && spec.mass_density > 0.0 && spec.diameter > 0.0,
          "drum mode needs positive stress, density and diameter");
  return constants::bessel_j0_first_zero / (0.5 * spec.diameter) *
         std::sqrt(spec.tensile_stress / spec.mass_density);
}

double zero_point_motion(double mass, double omega_m) {
  require(mass > 0.0 && omega_m > 0.0, "zero-point motion needs mass > 0 and frequency > 0");
  return std::sqrt(constants::hbar / (2.0 * mass * omega_m));
}

double mode_linewidth(const CavitySpec& cavity) {
  cavity.validate();
  return cavity.kappa();
}

double thermal_occupancy(double omega, double temperature) {
  require(omega > 0.0 && temperature >= 0.0, "occupancy needs omega > 0 and T >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

std::string_view to_string(ForceSign sign) {
  switch (sign) {
    case ForceSign::Attractive: return "attractive";
    case ForceSign::Repulsive: return "repulsive";
    case ForceSign::None: return "none";
  }
  return "none";
}

ForceSign force_sign(double g_om) {
  if (g_om > 0.0) return ForceSign::Attractive;
  if (g_om < 0.0) return ForceSign::Repulsive;
  return ForceSign::None;
}

CouplingReport coupling_report(const CavitySpec& cavity, const MembraneSpec& membrane,
                               const MechanicalMode& mode, const Susceptibility& chi,
                               double temperature, std::optional<double> kappa_ratio_override) {
  cavity.validate();
  membrane.validate();
  require(mode.zero_point >= 0.0 && mode.frequency > 0.0, "mechanical mode is not set");
  if (kappa_ratio_override) require(*kappa_ratio_override > 0.0, "kappa ratio must be > 0");

  const double k = cavity.wavenumber();
  const double l = membrane.thickness;
  const double kl = k * l;
  if (kl >= 1.0)
    throw ThinMembraneViolation(fmt::format("k*l = {:.4g} violates the thin-membrane limit", kl));

  const auto [sin_kz, cos_kz] = membrane.placement.sin_cos(k);
  const double s2 = sin_kz * sin_kz;
  const double sin2kz = 2.0 * sin_kz * cos_kz;
  const double omega_c = cavity.omega_c();
  const double eps_re = membrane.host_eps.real();
  const double eps_im = membrane.host_eps.imag();

  CouplingReport r;
  r.kl = kl;
  r.thin_membrane_warning = kl > 0.5;
  r.delta_omega = omega_c * l * (eps_re - 1.0 + chi.real()) * s2 / cavity.length;
  r.delta_kappa = omega_c * l * (eps_im + chi.imag()) * s2 / cavity.length;

  const double prefactor =
      omega_c * mode.zero_point * kl * sin2kz * membrane.overlap_factor / cavity.length;
  r.g_om_p = chi.real() * prefactor;
  r.g_om_h = (eps_re - 1.0) * prefactor;
  r.g_om = r.g_om_h + r.g_om_p;

  r.kappa = cavity.kappa();
  r.kappa_eff = kappa_ratio_override ? r.kappa / *kappa_ratio_override
                                     : 2.0 * cavity.kappa_intrinsic() + r.delta_kappa;
  if (!(r.kappa_eff > 0.0))
    throw LasingThreshold(fmt::format("effective linewidth {:.4g} rad/s is not positive",
                                      r.kappa_eff));
  r.cdr = r.g_om / r.kappa_eff;
  r.force = force_sign(r.g_om);

  r.n_thermal = thermal_occupancy(mode.frequency, temperature);
  r.mech_decoherence = mode.damping * r.n_thermal;
  r.c_quantum = r.mech_decoherence > 0.0 ? r.g_om * r.g_om / (r.kappa_eff * r.mech_decoherence)
                                         : std::numeric_limits<double>::infinity();
  return r;
}

OverlapResult overlap_integral_1d(double z0, double thickness, double wavenumber) {
  require(thickness > 0.0, "overlap integral needs thickness > 0");
  require(wavenumber > 0.0, "overlap integral needs k > 0");
  const double k = wavenumber;
  auto intensity = [k](double z) {
    const double s = std::sin(k * z);
    return s * s;
  };
  const double half = 0.5 * thickness;

  OverlapResult out;
  out.energy_overlap = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      intensity, z0 - half, z0 + half, 15, 1e-14);
  // sin²(k(z₀+l/2)) − sin²(k(z₀−l/2)) in product form.
  out.gradient_overlap = std::sin(2.0 * k * z0) * std::sin(k * thickness);
  out.energy_closed = thickness * intensity(z0);
  out.gradient_closed = thickness * k * std::sin(2.0 * k * z0);
  return out;
}

}  // namespace mitm
