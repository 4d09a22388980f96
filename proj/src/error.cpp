// SPDX-License-Identifier: Apache-2.0
#include "kp/error.hpp"

namespace kp {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotIncreasing: return "NotIncreasing";
        case ErrorCode::NotGeneric: return "NotGeneric";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::AmbiguousSign: return "AmbiguousSign";
        case ErrorCode::NotANecklace: return "NotANecklace";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::StuckTrip: return "StuckTrip";
        case ErrorCode::InconsistentLabels: return "InconsistentLabels";
        case ErrorCode::EmptyMatroid: return "EmptyMatroid";
        case ErrorCode::NonGenericInput: return "NonGenericInput";
        case ErrorCode::MalformedPlot: return "MalformedPlot";
        case ErrorCode::NotASchubertCell: return "NotASchubertCell";
        case ErrorCode::NecklaceViolation: return "NecklaceViolation";
        case ErrorCode::NotADiagonal: return "NotADiagonal";
        case ErrorCode::InconsistentCycle: return "InconsistentCycle";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::InsufficientLabels: return "InsufficientLabels";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace kp
