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

#include <stdexcept>
#include <string>

namespace mitm {

/// Base class for every error raised by the library. `exit_code()` is the
/// process exit status the CLI reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 3; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class InvalidArgument : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class GridTooLarge : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Solver-side failures (exit 3).
class PoleError : public Error {
 public:
  using Error::Error;
};

class NddPoleError : public Error {
 public:
  NddPoleError(const std::string& what, double chi_re, double chi_im)
      : Error(what), chi_re_(chi_re), chi_im_(chi_im) {}
  double chi_re() const { return chi_re_; }
  double chi_im() const { return chi_im_; }

 private:
  double chi_re_;
  double chi_im_;
};

class ClosedFormAssumption : public Error {
 public:
  using Error::Error;
};

class DegenerateSteadyState : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class LasingThreshold : public Error {
 public:
  using Error::Error;
};

class ThinMembraneViolation : public Error {
 public:
  using Error::Error;
};

class NoFeasiblePoint : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 5; }
};

}  // namespace mitm
