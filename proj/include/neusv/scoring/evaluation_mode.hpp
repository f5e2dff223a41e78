#pragma once

#include <array>
#include <string_view>

namespace neusv::scoring {

enum class EvaluationMode {
    ObjectExistence,
    SpatialRelationship,
    ObjectActionAlignment,
    OverallConsistency,
};

inline constexpr std::array<EvaluationMode, 4> kAllModes{
    EvaluationMode::ObjectExistence,
    EvaluationMode::SpatialRelationship,
    EvaluationMode::ObjectActionAlignment,
    EvaluationMode::OverallConsistency,
};

/// snake_case name used in files, e.g. "object_action_alignment".
std::string_view to_string(EvaluationMode m) noexcept;

/// Inverse of to_string. Throws ErrorCode::Schema for unknown names.
EvaluationMode parse_mode(std::string_view name);

} // namespace neusv::scoring
