// Copyright 2026 The graphstate Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphstate {

enum class ErrorKind {
    InvalidGraph,
    InvalidMatrix,
    DimensionMismatch,
    ConventionMismatch,
    InvalidPermutation,
    NoConvergence,
    NotAState,
    NotPSD,
    ZeroDegreeSum,
    BadWeights,
    NotDisjoint,
    HasLoops,
    NoSuchEdge,
    EdgeExists,
    NoSuchLoop,
    LoopExists,
    ComplexNotSupported,
    FormatError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::InvalidMatrix: return "InvalidMatrix";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ConventionMismatch: return "ConventionMismatch";
        case ErrorKind::InvalidPermutation: return "InvalidPermutation";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotAState: return "NotAState";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::ZeroDegreeSum: return "ZeroDegreeSum";
        case ErrorKind::BadWeights: return "BadWeights";
        case ErrorKind::NotDisjoint: return "NotDisjoint";
        case ErrorKind::HasLoops: return "HasLoops";
        case ErrorKind::NoSuchEdge: return "NoSuchEdge";
        case ErrorKind::EdgeExists: return "EdgeExists";
        case ErrorKind::NoSuchLoop: return "NoSuchLoop";
        case ErrorKind::LoopExists: return "LoopExists";
        case ErrorKind::ComplexNotSupported: return "ComplexNotSupported";
        case ErrorKind::FormatError: return "FormatError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `value()` carries the offending
/// number when there is one (e.g. the minimum eigenvalue for NotPSD).
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what, std::optional<double> value = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {
    }

    ErrorKind kind() const noexcept {
        return kind_;
    }
    std::optional<double> value() const noexcept {
        return value_;
    }

   private:
    ErrorKind kind_;
    std::optional<double> value_;
};

}  // namespace graphstate
