#pragma once

#include <map>
#include <string>

#include "neusv/scoring/ecdf.hpp"

namespace neusv::scoring {

/// Everything needed to turn raw detector output into alignment scores: the
/// detector threshold and one reference distribution per mode.
struct CalibrationProfile {
    std::string version;
    double gamma_fp = 0.5;
    std::string provenance;
    std::map<EvaluationMode, EcdfDistribution> ecdf;

    /// Throws ErrorCode::Schema naming the mode when it has no distribution.
    const EcdfDistribution& distribution(EvaluationMode m) const;

    friend bool operator==(const CalibrationProfile&, const CalibrationProfile&) = default;
};

} // namespace neusv::scoring
