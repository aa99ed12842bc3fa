#include "selfsim/error.hpp"

namespace selfsim {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidSeries: return "InvalidSeries";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::DegenerateSeries: return "DegenerateSeries";
        case ErrorKind::LagTooLarge: return "LagTooLarge";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::NonPositivePoint: return "NonPositivePoint";
        case ErrorKind::BlockTooLarge: return "BlockTooLarge";
        case ErrorKind::SeriesTooShort: return "SeriesTooShort";
        case ErrorKind::TooFewScales: return "TooFewScales";
        case ErrorKind::InvalidH: return "InvalidH";
        case ErrorKind::EmbeddingFailure: return "EmbeddingFailure";
        case ErrorKind::InvalidBounds: return "InvalidBounds";
        case ErrorKind::WindowTooLarge: return "WindowTooLarge";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::NonPositiveState: return "NonPositiveState";
        case ErrorKind::TraceTooShort: return "TraceTooShort";
        case ErrorKind::FileNotFound: return "FileNotFound";
        case ErrorKind::MalformedCsv: return "MalformedCsv";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace selfsim
