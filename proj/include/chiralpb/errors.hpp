// Copyright 2026 The chiralpb Authors
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

namespace chiralpb {

/// Base class for every error raised by the library. `category()` is a short
/// machine-readable tag the CLI prints in front of the message.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}
  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

class InvalidParams : public Error {
 public:
  explicit InvalidParams(const std::string& what) : Error("config", what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension", what) {}
};

/// A correlation function whose denominator is below the photon floor, or
/// that needs more Fock levels than the truncation provides.
class UndefinedCorrelation : public Error {
 public:
  explicit UndefinedCorrelation(const std::string& what) : Error("undefined", what) {}
};

class DegenerateSteadyState : public Error {
 public:
  explicit DegenerateSteadyState(const std::string& what) : Error("degenerate", what) {}
};

class SolverNotConverged : public Error {
 public:
  SolverNotConverged(const std::string& what, double residual)
      : Error("solver", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class StepSizeUnderflow : public Error {
 public:
  explicit StepSizeUnderflow(const std::string& what) : Error("solver", what) {}
};

class ResonantDegeneracy : public Error {
 public:
  explicit ResonantDegeneracy(const std::string& what) : Error("degenerate", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace chiralpb
