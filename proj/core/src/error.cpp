#include "ginet/error.hpp"

namespace ginet {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::LevelNotFound: return "level-not-found";
        case ErrorCode::MissingDistribution: return "missing-distribution";
        case ErrorCode::ZeroMass: return "zero-mass";
        case ErrorCode::DegenerateDistribution: return "degenerate-distribution";
        case ErrorCode::Normalization: return "normalization";
        case ErrorCode::ZeroSurvival: return "zero-survival";
        case ErrorCode::AbsentCell: return "absent-cell";
        case ErrorCode::InvalidModel: return "invalid-model";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::InvalidFitness: return "invalid-fitness";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::EmptyDataset: return "empty-dataset";
        case ErrorCode::Schema: return "schema";
        case ErrorCode::InvalidIdentifier: return "invalid-identifier";
        case ErrorCode::EmptyProfile: return "empty-profile";
        case ErrorCode::InsufficientOverlap: return "insufficient-overlap";
        case ErrorCode::UndefinedCorrelation: return "undefined-correlation";
        case ErrorCode::Containment: return "containment";
        case ErrorCode::Perturbation: return "perturbation";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace ginet
