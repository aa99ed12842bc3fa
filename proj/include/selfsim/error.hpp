#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorKind {
    InvalidArgument,
    InvalidSeries,
    TooShort,
    DegenerateSeries,
    LagTooLarge,
    TooFewPoints,
    NonPositivePoint,
    BlockTooLarge,
    SeriesTooShort,
    TooFewScales,
    InvalidH,
    EmbeddingFailure,
    InvalidBounds,
    WindowTooLarge,
    RankDeficient,
    StepTooLarge,
    NonPositiveState,
    TraceTooShort,
    FileNotFound,
    MalformedCsv,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Library error. `what()` always starts with the kind name, e.g.
/// "DegenerateSeries: series has zero variance".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace selfsim
