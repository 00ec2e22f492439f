// Copyright 2026 The crzz Authors
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
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace crzz {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Failure categories. Validation-type errors map to CLI exit code 1,
/// numerical ones to exit code 2.
enum class ErrorKind {
  InvalidInput,
  UnphysicalCard,
  Regime,
  SingularNetwork,
  InfeasibleSchedule,
  Truncation,
  DispersiveBreakdown,
  Labeling,
  BlockDiagonalization,
  ModelMismatch,
  Divergence,
  NumericalPrecision,
  UnreachableRotation,
  FitFailure,
  ClosureFailure,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::UnphysicalCard: return "unphysical-card";
    case ErrorKind::Regime: return "regime";
    case ErrorKind::SingularNetwork: return "singular-network";
    case ErrorKind::InfeasibleSchedule: return "infeasible-schedule";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::DispersiveBreakdown: return "dispersive-breakdown";
    case ErrorKind::Labeling: return "labeling";
    case ErrorKind::BlockDiagonalization: return "block-diagonalization";
    case ErrorKind::ModelMismatch: return "model-mismatch";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::NumericalPrecision: return "numerical-precision";
    case ErrorKind::UnreachableRotation: return "unreachable-rotation";
    case ErrorKind::FitFailure: return "fit-failure";
    case ErrorKind::ClosureFailure: return "closure-failure";
  }
  return "unknown";
}

inline bool is_validation_error(ErrorKind k) {
  return k == ErrorKind::InvalidInput || k == ErrorKind::UnphysicalCard ||
         k == ErrorKind::Regime || k == ErrorKind::SingularNetwork ||
         k == ErrorKind::InfeasibleSchedule;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

/// Non-fatal diagnostics attached to results.
using Notes = std::vector<std::string>;

}  // namespace crzz
