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

#include <Eigen/Dense>

#include "mitm/lambda_medium.hpp"

namespace mitm {

using Matrix3c = Eigen::Matrix<cplx, 3, 3>;
using Matrix9c = Eigen::Matrix<cplx, 9, 9>;
using Vector9c = Eigen::Matrix<cplx, 9, 1>;

/// Tolerances a DensityMatrix is held to.
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;

/// 3×3 state of the Λ system in the basis (|1⟩, |2⟩, |3⟩).
class DensityMatrix {
 public:
  /// Checks hermiticity, unit trace and positivity; throws InvalidArgument
  /// when any of them fails.
  explicit DensityMatrix(const Matrix3c& rho);

  /// |level⟩⟨level| with level in {1, 2, 3}.
  static DensityMatrix pure(int level);

  const Matrix3c& matrix() const { return rho_; }
  /// 1-based element ⟨i|ρ|j⟩.
  cplx element(int i, int j) const { return rho_(i - 1, j - 1); }

  double trace_error() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  Matrix3c rho_;
};

/// ρ̇ = L·vec(ρ) with column stacking: vec(ρ)[i + 3j] = ρ(i, j).
struct Liouvillian {
  Matrix9c matrix;
};

Vector9c vectorize(const Matrix3c& rho);
Matrix3c unvectorize(const Vector9c& v);

/// H = −Δp σ22 − (Δp + Δμ) σ11 + Ωp(σ32 + σ23) + Ωμ(σ21 + σ12), ħ = 1.
Matrix3c build_hamiltonian(const LambdaDriveParams& params);

/// L = −i(I⊗H − Hᵀ⊗I) + Σ_k rate_k D[A_k] with collapse operators
/// √γ1 σ13, √γ2 σ23, √r σ31 and an optional pure dephasing √γd σ22.
/// D[A]ρ = AρA† − ½{A†A, ρ}.
Liouvillian build_liouvillian(const LambdaDriveParams& params, double dephasing_2 = 0.0);

/// Relative singular-value threshold below which a direction of L counts as
/// part of its null space.
inline constexpr double kNullSpaceThreshold = 1e-8;
inline constexpr double kResidualTolerance = 1e-10;

/// Unique steady state of L, found by a dense solve with one row of L
/// replaced by the trace constraint. Throws DegenerateSteadyState when the
/// null space has dimension > 1 and NoConvergence when the residual
/// ‖L·vec(ρ)‖ exceeds kResidualTolerance·‖L‖.
DensityMatrix steady_state(const Liouvillian& liouvillian);

/// Fixed-step RK4 integration of ρ̇ = Lρ up to t_final. Requires
/// dt ≤ 0.01 / (largest rate in params), else StepTooLarge.
DensityMatrix time_evolve(const DensityMatrix& rho0, const LambdaDriveParams& params,
                          double t_final, double dt, double dephasing_2 = 0.0);

/// Probe amplitude used when the caller leaves omega_p at zero.
inline constexpr double kDefaultProbeFraction = 1e-4;
inline constexpr double kLinearityTolerance = 1e-3;

struct NumericChi {
  Susceptibility chi;
  /// Value at Ωp/10, kept for the linearity diagnostic.
  Susceptibility chi_weak_probe;
  double linearity_deviation = 0.0;
  bool nonlinear = false;
};

/// χp = s₀·γ2·ρ23/Ωp at the steady state of the full master equation.
/// ⟨2|ρ|3⟩ is the element that yields absorption (Im χ > 0) in the
/// two-level limit. When params.omega_p is zero a probe of 1e-4·γ2 is used.
NumericChi chi_p_numeric(const LambdaDriveParams& params, double s0, double dephasing_2 = 0.0);

/// Row-major, tab-separated "re+imj" dump of a complex matrix.
void dump_matrix(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXcd>& m);

}  // namespace mitm
