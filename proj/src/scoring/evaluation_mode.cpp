#include "neusv/scoring/evaluation_mode.hpp"

#include <string>

#include "neusv/error.hpp"

namespace neusv::scoring {

std::string_view to_string(EvaluationMode m) noexcept {
    switch (m) {
    case EvaluationMode::ObjectExistence: return "object_existence";
    case EvaluationMode::SpatialRelationship: return "spatial_relationship";
    case EvaluationMode::ObjectActionAlignment: return "object_action_alignment";
    case EvaluationMode::OverallConsistency: return "overall_consistency";
    }
    return "unknown";
}

EvaluationMode parse_mode(std::string_view name) {
    for (auto m : kAllModes) {
        if (to_string(m) == name) return m;
    }
    throw Error(ErrorCode::Schema, "unknown evaluation mode '" + std::string(name) + "'");
}

} // namespace neusv::scoring
