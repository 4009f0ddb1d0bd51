// Copyright 2026 The clonebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace clonebound {

enum class ErrorKind {
    NonSquare,
    NotHermitian,
    NotPSD,
    TraceNotOne,
    InvalidPriors,
    DimensionMismatch,
    RangeError,
    DegenerateFidelity,
    DegenerateStates,
    ArityError,
    InvalidEffect,
    NonUnitary,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries the violated invariant as a
/// kind plus a message with the measured residual where one exists.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
    }

    ErrorKind kind() const noexcept {
        return kind_;
    }

  private:
    ErrorKind kind_;
};

inline std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonSquare:
            return "NonSquare";
        case ErrorKind::NotHermitian:
            return "NotHermitian";
        case ErrorKind::NotPSD:
            return "NotPSD";
        case ErrorKind::TraceNotOne:
            return "TraceNotOne";
        case ErrorKind::InvalidPriors:
            return "InvalidPriors";
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::RangeError:
            return "RangeError";
        case ErrorKind::DegenerateFidelity:
            return "DegenerateFidelity";
        case ErrorKind::DegenerateStates:
            return "DegenerateStates";
        case ErrorKind::ArityError:
            return "ArityError";
        case ErrorKind::InvalidEffect:
            return "InvalidEffect";
        case ErrorKind::NonUnitary:
            return "NonUnitary";
    }
    return "Unknown";
}

}  // namespace clonebound
