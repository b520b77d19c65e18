// Copyright 2026 The entroflow Authors
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
#include <string_view>

namespace entroflow {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DimensionOverflow,
  ShapeMismatch,
  NotUnitTrace,
  NotPositive,
  ZeroVector,
  RankOutOfRange,
  NotUnitary,
  IndexOutOfRange,
  PartitionMismatch,
  EmptyKeepSet,
  NotBipartite,
  InvalidPartition,
  DimensionMismatch,
  NonPositiveInput,
  LengthMismatch,
  NonPositiveWeight,
  SizeMismatch,
  NonPositiveProbability,
  NonPositiveEntry,
  NotNormalized,
  NotDoublyStochastic,
  InvalidConfig,
  TooFewEvents,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TooFewEvents: return "TooFewEvents";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
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
[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}
}  // namespace detail

}  // namespace entroflow
