// Copyright 2026 The clonebound Authors
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

#ifndef CLONEBOUND_ERRORS_HPP
#define CLONEBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace clonebound {

enum class ErrorCode {
  NotHermitian,
  NonFinite,
  NotPSD,
  NotUnitary,
  NotProjector,
  NotSquare,
  DimMismatch,
  DimTooSmall,
  DimTooLarge,
  EnvTooSmall,
  BadRank,
  BadTrace,
  NotNormalized,
  InvalidPOVM,
  TargetOutOfRange,
  OutOfRange,
  IndistinguishablePair,
  DegeneratePair,
  BudgetZero,
  InvalidArgument,
  NumericalInconsistency,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotProjector: return "NotProjector";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::EnvTooSmall: return "EnvTooSmall";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::BadTrace: return "BadTrace";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidPOVM: return "InvalidPOVM";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::IndistinguishablePair: return "IndistinguishablePair";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::BudgetZero: return "BudgetZero";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NumericalInconsistency: return "NumericalInconsistency";
  }
  return "Unknown";
}

/// Exception thrown by every contract violation in the library. The code is
/// stable and meant for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace detail
}  // namespace clonebound

#endif  // CLONEBOUND_ERRORS_HPP
