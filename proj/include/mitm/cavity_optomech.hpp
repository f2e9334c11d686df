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
#include <string_view>
#include <utility>

#include "mitm/lambda_medium.hpp"

namespace mitm {

/// Fabry-Pérot cavity. Q_c is authoritative; finesse is only bookkeeping.
struct CavitySpec {
  double wavelength = 1550e-9;     // m
  double length = 155e-6;          // m
  double quality_factor = 2e7;
  double intrinsic_fraction = 0.5; // κ_i/κ; 0.5 is critical coupling
  std::optional<double> finesse;

  void validate() const;
  double wavenumber() const;   // k = 2π/λ
  double omega_c() const;      // 2πc/λ
  double kappa() const;        // ω_c/Q_c
  double kappa_intrinsic() const { return intrinsic_fraction * kappa(); }
};

/// Q_c = F·L/λ. This reproduces the reference pairing F = 2×10⁵,
/// L = 100λ ↔ Q_c = 2×10⁷; the textbook 2FL/λ would give twice that.
double quality_from_finesse(double finesse, double length, double wavelength);

/// Membrane placement, either as a position z₀ in the standing wave or
/// directly as sin²(kz₀). The sin² form picks kz₀ ∈ [0, π/2].
struct Placement {
  enum class Kind { Position, Sin2 };
  Kind kind = Kind::Sin2;
  double value = 0.5;

  static Placement at_position(double z0) { return {Kind::Position, z0}; }
  static Placement from_sin2(double s) { return {Kind::Sin2, s}; }
  /// kz₀ in radians.
  double phase(double wavenumber) const;
  /// (sin kz₀, cos kz₀). Exact at the nodes and antinodes for the sin² form.
  std::pair<double, double> sin_cos(double wavenumber) const;
};

struct MembraneSpec {
  double thickness = 100e-9;       // m
  Placement placement;
  double diameter = 10e-6;         // m
  double mass_density = 2700.0;    // kg/m³
  double tensile_stress = 0.9e9;   // Pa
  cplx host_eps{4.0, 0.0};
  double mech_quality = 4e6;
  double overlap_factor = 1.0;     // ℬ

  void validate() const;
};

/// Fundamental mechanical mode. Built through make() so z_zp is consistent
/// with mass and frequency.
struct MechanicalMode {
  double frequency = 0.0;  // Ω_m, rad/s
  double mass = 0.0;       // kg
  double zero_point = 0.0; // m
  double damping = 0.0;    // γ_m = Ω_m/Q_m, rad/s

  static MechanicalMode make(double mass, double frequency, double mech_quality);
};

double membrane_mass(const MembraneSpec& spec);

/// Fundamental drum mode Ω_m = (j₀₁/(D/2))·√(T_s/ρ_m).
double mechanical_frequency(const MembraneSpec& spec);

/// z_zp = √(ħ/2MΩ_m).
double zero_point_motion(double mass, double omega_m);

/// κ = ω_c/Q_c.
double mode_linewidth(const CavitySpec& cavity);

/// Bose-Einstein occupancy 1/(exp(ħΩ/k_BT) − 1); zero at T = 0.
double thermal_occupancy(double omega, double temperature);

enum class ForceSign { Attractive, Repulsive, None };
std::string_view to_string(ForceSign sign);

/// Radiation-pressure direction from F_rp = −ħ g_om n / z_zp:
/// g_om > 0 pushes toward −z (attractive), g_om < 0 toward +z (repulsive).
ForceSign force_sign(double g_om);

struct CouplingReport {
  double delta_omega = 0.0;  // rad/s
  double delta_kappa = 0.0;  // rad/s, negative = gain narrowing
  double g_om_h = 0.0;       // rad/s
  double g_om_p = 0.0;       // rad/s
  double g_om = 0.0;         // rad/s
  double kappa = 0.0;        // rad/s, bare cavity
  double kappa_eff = 0.0;    // κ′, rad/s
  double cdr = 0.0;          // g_om/κ′
  ForceSign force = ForceSign::None;
  double n_thermal = 0.0;
  double mech_decoherence = 0.0;  // γ_m·n̄_th, rad/s
  double c_quantum = 0.0;
  double kl = 0.0;
  bool thin_membrane_warning = false;  // k·l > 0.5
};

/// Coupled-mode coefficients for a thin membrane (k·l < 1):
///   Δω      = ω_c·l·(ε_h′ − 1 + χ′)·sin²(kz₀)/L
///   Δκ      = ω_c·l·(ε_h″ + χ″)·sin²(kz₀)/L
///   g_om,P  = χ′·ω_c·z_zp·k·l·sin(2kz₀)·ℬ/L
///   g_om,h  = (ε_h′ − 1)·ω_c·z_zp·k·l·sin(2kz₀)·ℬ/L
///   κ′      = 2κ_i + Δκ, or κ/override when kappa_ratio_override is set
///   C_Q     = g_om²/(κ′·γ_m·n̄_th)
/// Only Re χ enters the mechanical coupling; Im χ feeds Δκ.
/// Throws ThinMembraneViolation for k·l ≥ 1 and LasingThreshold for κ′ ≤ 0.
CouplingReport coupling_report(const CavitySpec& cavity, const MembraneSpec& membrane,
                               const MechanicalMode& mode, const Susceptibility& chi,
                               double temperature,
                               std::optional<double> kappa_ratio_override = std::nullopt);

struct OverlapResult {
  double energy_overlap = 0.0;    // ∫ sin²(kz) dz across the slab, m
  double gradient_overlap = 0.0;  // d(energy_overlap)/dz₀
  double energy_closed = 0.0;     // l·sin²(kz₀)
  double gradient_closed = 0.0;   // l·k·sin(2kz₀)
};

/// Finite-thickness check of the thin-membrane forms: the energy overlap
/// is integrated by adaptive quadrature, the gradient is exact.
OverlapResult overlap_integral_1d(double z0, double thickness, double wavenumber);

}  // namespace mitm
