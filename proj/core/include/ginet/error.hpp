#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ginet {

enum class ErrorCode {
    LevelNotFound,
    MissingDistribution,
    ZeroMass,
    DegenerateDistribution,
    Normalization,
    ZeroSurvival,
    AbsentCell,
    InvalidModel,
    InvalidArgument,
    InvalidFitness,
    Domain,
    EmptyDataset,
    Schema,
    InvalidIdentifier,
    EmptyProfile,
    InsufficientOverlap,
    UndefinedCorrelation,
    Containment,
    Perturbation,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so callers (and the CLI's
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ginet
