// Copyright 2026 The normfac Authors
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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace normfac {

enum class ErrorCode {
    // numkit
    NonFinite,
    NonSquare,
    DimensionMismatch,
    NotHermitian,
    NotNormal,
    NoConvergence,
    // idempotent
    NotUnit,
    ZeroVector,
    NotIdempotent,
    TraceNotInteger,
    MaxIterations,
    NotOrthogonal,
    RankOverflow,
    // factorization
    SelectorMismatch,
    ZeroBranch,
    TooManyRoots,
    NotInvolution,
    NotScaledInvolution,
    // gates
    UnknownGate,
    MissingParameter,
    NotOrthonormal,
    LengthMismatch,
    ExponentOutOfRange,
    // density
    WeightsInvalid,
    NotDensity,
    // matrix files and reports
    BadHeader,
    BadToken,
    CountMismatch,
    BadReport,
};

inline std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::TraceNotInteger: return "TraceNotInteger";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::RankOverflow: return "RankOverflow";
    case ErrorCode::SelectorMismatch: return "SelectorMismatch";
    case ErrorCode::ZeroBranch: return "ZeroBranch";
    case ErrorCode::TooManyRoots: return "TooManyRoots";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::NotScaledInvolution: return "NotScaledInvolution";
    case ErrorCode::UnknownGate: return "UnknownGate";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::WeightsInvalid: return "WeightsInvalid";
    case ErrorCode::NotDensity: return "NotDensity";
    case ErrorCode::BadHeader: return "BadHeader";
    case ErrorCode::BadToken: return "BadToken";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::BadReport: return "BadReport";
    }
    return "Unknown";
}

/// Input-format failures; everything else is a violated mathematical precondition.
inline bool is_parse_error(ErrorCode code) {
    return code == ErrorCode::BadHeader || code == ErrorCode::BadToken ||
           code == ErrorCode::CountMismatch || code == ErrorCode::BadReport;
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised by make_family when members i and j are not orthogonal.
class NotOrthogonalError : public Error {
  public:
    NotOrthogonalError(std::size_t i, std::size_t j, double overlap)
        : Error(ErrorCode::NotOrthogonal,
                "members " + std::to_string(i) + " and " + std::to_string(j) +
                    " overlap with norm " + std::to_string(overlap)),
          first(i), second(j) {}

    std::size_t first;
    std::size_t second;
};

/// Raised by all_nth_roots; carries the count that would have been produced.
class TooManyRootsError : public Error {
  public:
    TooManyRootsError(std::uint64_t count, std::uint64_t cap, bool saturated)
        : Error(ErrorCode::TooManyRoots,
                (saturated ? std::string("more than 2^64") : std::to_string(count)) +
                    " roots exceed the cap of " + std::to_string(cap)),
          count(count), saturated(saturated) {}

    std::uint64_t count;
    bool saturated;
};

/// Matrix-file syntax error with a 1-based source position.
class ParseError : public Error {
  public:
    ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string &what)
        : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": " + what),
          line(line), column(column) {}

    std::size_t line;
    std::size_t column;
};

} // namespace normfac
