// Copyright 2026 The QCT Authors
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

#ifndef QCT_ERROR_HPP
#define QCT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qct {

enum class ErrorCode {
    UnknownParticle,
    AlreadyMeasured,
    SelfMeasurement,
    DuplicateParticle,
    ImpossibleOutcome,
    TooManyQubits,
    IndexOutOfRange,
    CoincidentIndices,
    EmptyOutcomes,
    LengthMismatch,
    SizeMismatch,
    NotAPermutation,
    StrategyMismatch,
    InvalidConfig,
    PhaseOrder,
};

constexpr std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownParticle: return "unknown-particle";
        case ErrorCode::AlreadyMeasured: return "already-measured";
        case ErrorCode::SelfMeasurement: return "self-measurement";
        case ErrorCode::DuplicateParticle: return "duplicate-particle";
        case ErrorCode::ImpossibleOutcome: return "impossible-outcome";
        case ErrorCode::TooManyQubits: return "too-many-qubits";
        case ErrorCode::IndexOutOfRange: return "index-out-of-range";
        case ErrorCode::CoincidentIndices: return "coincident-indices";
        case ErrorCode::EmptyOutcomes: return "empty-outcomes";
        case ErrorCode::LengthMismatch: return "length-mismatch";
        case ErrorCode::SizeMismatch: return "size-mismatch";
        case ErrorCode::NotAPermutation: return "not-a-permutation";
        case ErrorCode::StrategyMismatch: return "strategy-mismatch";
        case ErrorCode::InvalidConfig: return "invalid-config";
        case ErrorCode::PhaseOrder: return "phase-order";
    }
    return "unknown";
}

/// All recoverable failures in the library are reported with this type; `code()` identifies the
/// contract that was violated.
class Error : public std::invalid_argument {
   public:
    Error(ErrorCode code, const std::string &what)
        : std::invalid_argument(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace qct

#endif
