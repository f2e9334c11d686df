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

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mitm/constants.hpp"
#include "mitm/errors.hpp"
#include "mitm/lambda_medium.hpp"

using namespace mitm;

namespace {

LambdaDriveParams er_operating_point() {
  LambdaDriveParams p;
  p.pump_r = 0.1;
  p.omega_mu = 1.0;
  p.delta_p = 0.30285;
  p.delta_mu = 0.4;
  return p;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("s0 from number density") {
  DopantSpec d{0.0, 1550e-9, std::nullopt, 4.0};
  CHECK(s0_from_density(d) == 0.0);

  // 2.57e13 cm^-3 at 1550 nm in a host with eps = 4.
  d.number_density = 2.57e19;
  const double s0 = s0_from_density(d);
  CHECK(s0 == doctest::Approx(3.0 / 1.66).epsilon(0.01));
  CHECK(s0 == doctest::Approx(1.818).epsilon(1e-3));

  // N λ³ for s0 = 3/1.66 is about 95.
  const double n = density_from_s0(3.0 / 1.66, 1550e-9, 4.0);
  CHECK(n * std::pow(1550e-9, 3) == doctest::Approx(95.1).epsilon(0.005));

  d.host_eps_real = 0.5;
  CHECK_THROWS_AS(s0_from_density(d), InvalidArgument);
}

TEST_CASE("dipole decay rate") {
  CHECK(gamma_from_dipole(0.0, 1e15, 4.0) == 0.0);

  const double lambda = 1550e-9;
  const double omega = 2.0 * constants::pi * constants::speed_of_light / lambda;
  const double dipole = 1e-29;
  const double gamma = gamma_from_dipole(dipole, omega, 4.0);

  SUBCASE("independent evaluation in 50-digit arithmetic") {
    using big = boost::multiprecision::cpp_bin_float_50;
    const big pi = boost::math::constants::pi<big>();
    const big c = 299792458;
    const big hbar = big("6.62607015e-34") / (2 * pi);
    const big eps0 = big("8.8541878128e-12");
    const big w = 2 * pi * c / big("1550e-9");
    const big q = big("1e-29");
    const big expected = 4 * w * w * w * q * q * 2 / (6 * pi * eps0 * hbar * c * c * c);
    CHECK(gamma == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));
  }

  SUBCASE("printed rate is twice the one implied by the s0 closed form") {
    const double n = 2.57e19;
    const double s0_from_rate =
        n * dipole * dipole / (constants::vacuum_permittivity * constants::hbar * gamma);
    const double s0_closed = s0_from_density({n, lambda, dipole, 4.0});
    CHECK(s0_from_rate == doctest::Approx(0.5 * s0_closed).epsilon(1e-12));
  }

  CHECK_THROWS_AS(gamma_from_dipole(1e-29, omega, 0.9), InvalidArgument);
}

TEST_CASE("closed form at the Er operating point") {
  const double s0 = 3.0 / 1.66;
  // Frozen from an independent transcription of the rational expression.
  const cplx printed{-4.187238633754296, -2.4543460071048018};
  const cplx flipped{2.9924015283929895, -4.5102325423727e-06};
  CHECK(rel(chi_p_closed(er_operating_point(), s0).value(), printed) < 1e-12);
  CHECK(rel(chi_p_closed(er_operating_point(), s0, ChiFormula::FlippedCoherence).value(),
            flipped) < 1e-12);

  // Only the flipped-coherence variant rounds to the reference 1181.45 - 0.70i.
  const cplx ndd_flipped =
      ndd_transform(chi_p_closed(er_operating_point(), s0, ChiFormula::FlippedCoherence)).value();
  CHECK(std::abs(ndd_flipped.real() - 1181.45) < 0.005);
  CHECK(std::abs(ndd_flipped.imag() - (-0.70)) < 0.005);
  const cplx ndd_printed = ndd_transform(chi_p_closed(er_operating_point(), s0)).value();
  CHECK(std::abs(ndd_printed - cplx(1181.45, -0.70)) > 1000.0);
}

TEST_CASE("closed form is linear in s0 and blind to the probe") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate(0.05, 2.0), det(-2.0, 2.0), scale(0.1, 10.0);
  for (int n = 0; n < 200; ++n) {
    LambdaDriveParams p;
    p.pump_r = rate(rng);
    p.omega_mu = rate(rng);
    p.delta_p = det(rng);
    p.delta_mu = det(rng);
    const double s0 = rate(rng);
    const double a = scale(rng);
    for (auto f : {ChiFormula::Printed, ChiFormula::FlippedCoherence}) {
      const cplx base = chi_p_closed(p, s0, f).value();
      CHECK(rel(chi_p_closed(p, a * s0, f).value(), a * base) < 1e-12);
      CHECK(rel(chi_p_closed(p, 2.0 * s0, f).value(), 2.0 * base) < 1e-12);
      LambdaDriveParams probed = p;
      probed.omega_p = 0.1;
      CHECK(chi_p_closed(probed, s0, f).value() == base);
    }
  }
}

TEST_CASE("closed form rejects unequal decay rates and poles") {
  LambdaDriveParams p = er_operating_point();
  p.gamma2 = 0.5;
  CHECK_THROWS_AS(chi_p_closed(p, 1.0), ClosedFormAssumption);

  LambdaDriveParams pole;
  pole.omega_mu = 1.0;
  pole.delta_p = 0.3;
  pole.pump_r = 0.0;
  pole.delta_mu = 0.0;
  CHECK_THROWS_AS(chi_p_closed(pole, 1.0), PoleError);

  LambdaDriveParams negative;
  negative.pump_r = -0.1;
  CHECK_THROWS_AS(chi_p_closed(negative, 1.0), InvalidArgument);
}

TEST_CASE("local-field transform") {
  CHECK(ndd_transform(Susceptibility({0.0, 0.0})).value() == cplx(0.0, 0.0));
  CHECK(ndd_transform(Susceptibility({1.5, 0.0})).value() == cplx(3.0, 0.0));
  CHECK_THROWS_AS(ndd_transform(Susceptibility({3.0, 0.0})), NddPoleError);
  try {
    ndd_transform(Susceptibility({3.0, 0.0}));
  } catch (const NddPoleError& e) {
    CHECK(e.chi_re() == 3.0);
    CHECK(e.chi_im() == 0.0);
  }

  SUBCASE("inverse recovers the input away from the pole") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    int checked = 0;
    while (checked < 500) {
      const cplx chi{u(rng), u(rng)};
      if (ndd_pole_distance(chi) < 1e-3 || std::abs(1.0 + chi / 3.0) < 1e-3) continue;
      const cplx back = ndd_inverse(ndd_transform(Susceptibility(chi))).value();
      CHECK(rel(back, chi) < 1e-10);
      ++checked;
    }
  }

  SUBCASE("enhancement for 0 < Re chi < 3 with small losses") {
    for (int i = 1; i < 60; ++i) {
      const double re = 0.05 * i;
      for (double im : {-1e-3, 0.0, 1e-3}) {
        const cplx chi{re, im};
        CHECK(std::abs(ndd_transform(Susceptibility(chi)).value()) >= std::abs(chi));
      }
    }
  }
}

TEST_CASE("susceptibility rejects non-finite values") {
  CHECK_THROWS_AS(Susceptibility(cplx(std::nan(""), 0.0)), Error);
  CHECK_THROWS_AS(Susceptibility(cplx(0.0, INFINITY)), Error);
  CHECK(Susceptibility({0.0, -1.0}).is_gain());
}
