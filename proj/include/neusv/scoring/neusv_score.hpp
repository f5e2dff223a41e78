#pragma once

#include <map>
#include <vector>

#include "neusv/scoring/evaluation_mode.hpp"

namespace neusv::scoring {

struct ModeScore {
    double satisfaction_probability = 0.0;
    double score = 0.0;

    friend bool operator==(const ModeScore&, const ModeScore&) = default;
};

struct NeusVScore {
    std::map<EvaluationMode, ModeScore> per_mode;
    /// Modes that were not scored; they do not enter the mean.
    std::vector<EvaluationMode> absent;
    double final_score = 0.0;

    friend bool operator==(const NeusVScore&, const NeusVScore&) = default;
};

/// Mean of the calibrated scores present. Throws ErrorCode::NoModes when
/// `per_mode` is empty and ErrorCode::Domain for values outside [0, 1].
NeusVScore aggregate(const std::map<EvaluationMode, ModeScore>& per_mode);

} // namespace neusv::scoring
