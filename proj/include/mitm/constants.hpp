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

#include <numbers>

// SI values, CODATA 2018 (exact where the SI defines them).
namespace mitm::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;           // m/s
inline constexpr double planck = 6.62607015e-34;                // J s
inline constexpr double hbar = planck / (2.0 * pi);             // J s
inline constexpr double boltzmann = 1.380649e-23;               // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m

// First zero of the Bessel function J0.
inline constexpr double bessel_j0_first_zero = 2.404825557695773;

}  // namespace mitm::constants
