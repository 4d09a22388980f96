// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kp {

enum class ErrorCode {
    NotIncreasing,
    NotGeneric,
    RankDeficient,
    AmbiguousSign,
    NotANecklace,
    NotIrreducible,
    NotFound,
    StuckTrip,
    InconsistentLabels,
    EmptyMatroid,
    NonGenericInput,
    MalformedPlot,
    NotASchubertCell,
    NecklaceViolation,
    NotADiagonal,
    InconsistentCycle,
    Disconnected,
    InsufficientLabels,
    NoConvergence,
    InvalidArgument,
    ParseError,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can turn it into a structured error report.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace kp
