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

#include <complex>
#include <optional>
#include <string_view>

namespace mitm {

using cplx = std::complex<double>;

/// Drives, detunings and rates of the three-level Λ medium. Basis order is
/// (|1⟩, |2⟩, |3⟩): two ground states and the excited state. All entries are
/// angular rates; the library is scale free, so callers usually work in units
/// of the excited-state decay rate γ.
struct LambdaDriveParams {
  double gamma1 = 1.0;    // |3⟩ → |1⟩ decay
  double gamma2 = 1.0;    // |3⟩ → |2⟩ decay
  double pump_r = 0.0;    // incoherent |1⟩ → |3⟩ pump
  double omega_mu = 0.0;  // microwave Rabi frequency on |1⟩ ↔ |2⟩
  double omega_p = 0.0;   // probe Rabi frequency on |2⟩ ↔ |3⟩
  double delta_p = 0.0;
  double delta_mu = 0.0;

  /// Throws InvalidArgument on negative rates or non-finite entries.
  void validate() const;
  /// Largest magnitude among {γ1, γ2, r, Ωμ, Ωp, |Δp|, |Δμ|}.
  double natural_scale() const;
};

struct DopantSpec {
  double number_density = 0.0;        // 1/m³
  double transition_wavelength = 0.0; // m, of the |2⟩ ↔ |3⟩ line
  std::optional<double> dipole_moment; // C·m
  double host_eps_real = 1.0;

  void validate() const;
};

/// Complex dimensionless electric susceptibility. Positive imaginary part is
/// absorption, negative is gain. Non-finite values are rejected.
class Susceptibility {
 public:
  Susceptibility() = default;
  explicit Susceptibility(cplx value);

  cplx value() const { return value_; }
  double real() const { return value_.real(); }
  double imag() const { return value_.imag(); }
  bool is_gain() const { return value_.imag() < 0.0; }

  friend bool operator==(const Susceptibility&, const Susceptibility&) = default;

 private:
  cplx value_{0.0, 0.0};
};

/// Which closed-form expression chi_p_closed evaluates.
///  Printed          the rational expression in its original form;
///  FlippedCoherence same expression with the sign of the 8iΩμ² numerator
///                   term reversed. This variant reproduces the reference
///                   Er³⁺ operating point and the reference maps.
enum class ChiFormula { Printed, FlippedCoherence };

std::string_view to_string(ChiFormula formula);
ChiFormula chi_formula_from_string(std::string_view name);

/// Sign/conjugation variants of the closed form, used when adjudicating it
/// against the master-equation oracle.
struct FormulaVariant {
  bool flip_coherence_term = false;
  bool flip_detunings = false;
  bool conjugate = false;

  std::string name() const;
};

inline constexpr double kNddPoleTolerance = 1e-9;
inline constexpr double kClosedFormPoleTolerance = 1e-12;

/// s₀ = 3𝒩λ³ / (8π²√ε_h).
double s0_from_density(const DopantSpec& dopant);

/// Inverse of s0_from_density: number density that yields the given s₀.
double density_from_s0(double s0, double wavelength, double host_eps_real);

/// Radiative decay rate γ = 4ω³𝒬²√ε_h / (6πε₀ħc³), rad/s.
double gamma_from_dipole(double dipole, double omega_a, double eps_h);

/// Closed-form first-order probe susceptibility. Requires γ1 = γ2 (throws
/// ClosedFormAssumption otherwise); the common value is used as γ. Linear in
/// s₀ and independent of Ωp. Throws PoleError when the denominator vanishes
/// relative to natural_scale()³.
Susceptibility chi_p_closed(const LambdaDriveParams& params, double s0,
                            ChiFormula formula = ChiFormula::Printed);
Susceptibility chi_p_closed(const LambdaDriveParams& params, double s0,
                            const FormulaVariant& variant);

/// Local-field (near dipole-dipole) enhancement χ/(1 − χ/3).
/// Throws NddPoleError when |1 − χ/3| ≤ kNddPoleTolerance.
Susceptibility ndd_transform(const Susceptibility& chi_p);

/// Algebraic inverse of ndd_transform: χ/(1 + χ/3).
Susceptibility ndd_inverse(const Susceptibility& chi_ndd);

/// |1 − χ/3|, the distance from the local-field pole.
inline double ndd_pole_distance(cplx chi_p) { return std::abs(1.0 - chi_p / 3.0); }

}  // namespace mitm
