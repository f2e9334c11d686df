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

#include "mitm/lindblad_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "mitm/errors.hpp"

namespace mitm {

namespace {

Matrix3c sigma(int i, int j) {
  Matrix3c m = Matrix3c::Zero();
  m(i - 1, j - 1) = 1.0;
  return m;
}

Matrix9c kron(const Matrix3c& a, const Matrix3c& b) {
  Matrix9c out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

void add_dissipator(Matrix9c& l, const Matrix3c& a, double rate) {
  if (rate == 0.0) return;
  const Matrix3c id = Matrix3c::Identity();
  const Matrix3c ada = a.adjoint() * a;
  l += rate * (kron(a.conjugate(), a) - 0.5 * kron(id, ada) - 0.5 * kron(ada.transpose(), id));
}

Matrix3c hermitian_part(const Matrix3c& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

DensityMatrix::DensityMatrix(const Matrix3c& rho) : rho_(rho) {
  if (!rho_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  if (hermiticity_error() > kHermiticityTolerance)
    throw InvalidArgument(fmt::format("density matrix not Hermitian (error {:.3g})",
                                      hermiticity_error()));
  if (trace_error() > kTraceTolerance)
    throw InvalidArgument(fmt::format("density matrix trace off by {:.3g}", trace_error()));
  if (min_eigenvalue() < -kPositivityTolerance)
    throw InvalidArgument(fmt::format("density matrix has negative eigenvalue {:.3g}",
                                      min_eigenvalue()));
}

DensityMatrix DensityMatrix::pure(int level) {
  if (level < 1 || level > 3) throw InvalidArgument("level must be 1, 2 or 3");
  return DensityMatrix(sigma(level, level));
}

double DensityMatrix::trace_error() const { return std::abs(rho_.trace() - 1.0); }

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(hermitian_part(rho_), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Vector9c vectorize(const Matrix3c& rho) { return Eigen::Map<const Vector9c>(rho.data()); }

Matrix3c unvectorize(const Vector9c& v) { return Eigen::Map<const Matrix3c>(v.data()); }

Matrix3c build_hamiltonian(const LambdaDriveParams& params) {
  params.validate();
  return -params.delta_p * sigma(2, 2) - (params.delta_p + params.delta_mu) * sigma(1, 1) +
         params.omega_p * (sigma(3, 2) + sigma(2, 3)) +
         params.omega_mu * (sigma(2, 1) + sigma(1, 2));
}

Liouvillian build_liouvillian(const LambdaDriveParams& params, double dephasing_2) {
  if (!(dephasing_2 >= 0.0)) throw InvalidArgument("dephasing rate must be >= 0");
  const Matrix3c h = build_hamiltonian(params);
  const Matrix3c id = Matrix3c::Identity();
  const cplx minus_i{0.0, -1.0};

  Liouvillian out;
  out.matrix = minus_i * (kron(id, h) - kron(h.transpose(), id));
  add_dissipator(out.matrix, sigma(1, 3), params.gamma1);
  add_dissipator(out.matrix, sigma(2, 3), params.gamma2);
  add_dissipator(out.matrix, sigma(3, 1), params.pump_r);
  add_dissipator(out.matrix, sigma(2, 2), dephasing_2);
  return out;
}

DensityMatrix steady_state(const Liouvillian& liouvillian) {
  const Matrix9c& l = liouvillian.matrix;
  const double norm = l.norm();
  if (norm == 0.0) throw DegenerateSteadyState("Liouvillian is identically zero");

  Eigen::JacobiSVD<Matrix9c> svd(l);
  const auto& sv = svd.singularValues();
  const double cutoff = kNullSpaceThreshold * sv(0);
  const auto null_dim = (sv.array() < cutoff).count();
  if (null_dim > 1)
    throw DegenerateSteadyState(
        fmt::format("steady state is not unique (null space dimension {})", null_dim));

  // Rows 0, 4 and 8 of L sum to zero (trace preservation), so row 0 is
  // redundant and can carry Tr ρ = 1 instead.
  Matrix9c constrained = l;
  constrained.row(0).setZero();
  constrained(0, 0) = constrained(0, 4) = constrained(0, 8) = 1.0;
  Vector9c rhs = Vector9c::Zero();
  rhs(0) = 1.0;
  const Vector9c x = constrained.fullPivLu().solve(rhs);

  const double residual = (l * x).norm();
  if (!(residual < kResidualTolerance * norm))
    throw NoConvergence(fmt::format("steady-state residual {:.3g} exceeds {:.3g}", residual,
                                    kResidualTolerance * norm));
  try {
    return DensityMatrix(hermitian_part(unvectorize(x)));
  } catch (const InvalidArgument& e) {
    throw NoConvergence(std::string("steady state failed validation: ") + e.what());
  }
}

DensityMatrix time_evolve(const DensityMatrix& rho0, const LambdaDriveParams& params,
                          double t_final, double dt, double dephasing_2) {
  if (!(t_final >= 0.0)) throw InvalidArgument("t_final must be >= 0");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  const double max_rate =
      std::max({params.natural_scale(), std::abs(params.delta_p + params.delta_mu), dephasing_2});
  if (max_rate > 0.0 && dt > 0.01 / max_rate * (1.0 + 1e-12))
    throw StepTooLarge(fmt::format("dt = {:.3g} exceeds 0.01/max-rate = {:.3g}", dt,
                                   0.01 / max_rate));
  if (t_final == 0.0) return rho0;

  const Matrix9c l = build_liouvillian(params, dephasing_2).matrix;
  const auto steps = static_cast<long>(std::ceil(t_final / dt - 1e-9));
  const double h = t_final / static_cast<double>(steps);

  Vector9c v = vectorize(rho0.matrix());
  for (long n = 0; n < steps; ++n) {
    const Vector9c k1 = l * v;
    const Vector9c k2 = l * (v + 0.5 * h * k1);
    const Vector9c k3 = l * (v + 0.5 * h * k2);
    const Vector9c k4 = l * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const Matrix3c rho = unvectorize(v);
  const double drift = std::abs(rho.trace() - 1.0);
  if (drift > 1e-8) throw NoConvergence(fmt::format("trace drifted by {:.3g}", drift));
  // Absorb the sub-1e-8 drift so the result satisfies the unit-trace invariant.
  return DensityMatrix(hermitian_part(rho) / rho.trace().real());
}

NumericChi chi_p_numeric(const LambdaDriveParams& params, double s0, double dephasing_2) {
  params.validate();
  if (!(params.gamma2 > 0.0)) throw InvalidArgument("chi_p_numeric needs gamma2 > 0");
  if (!std::isfinite(s0)) throw InvalidArgument("s0 must be finite");

  LambdaDriveParams probe = params;
  if (probe.omega_p <= 0.0) probe.omega_p = kDefaultProbeFraction * params.gamma2;

  auto evaluate = [&](const LambdaDriveParams& p) {
    const DensityMatrix rho = steady_state(build_liouvillian(p, dephasing_2));
    return Susceptibility(s0 * p.gamma2 * rho.element(2, 3) / p.omega_p);
  };

  NumericChi out;
  out.chi = evaluate(probe);
  LambdaDriveParams weak = probe;
  weak.omega_p /= 10.0;
  out.chi_weak_probe = evaluate(weak);
  const double scale = std::abs(out.chi.value());
  out.linearity_deviation =
      scale > 0.0 ? std::abs(out.chi.value() - out.chi_weak_probe.value()) / scale : 0.0;
  out.nonlinear = out.linearity_deviation > kLinearityTolerance;
  return out;
}

void dump_matrix(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << '\t';
      out << fmt::format("{:.17g}{:+.17g}j", m(i, j).real(), m(i, j).imag());
    }
    out << '\n';
  }
}

}  // namespace mitm
