#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neusv/automaton/confidence_trace.hpp"
#include "neusv/checker/satisfaction.hpp"
#include "neusv/perception/client.hpp"
#include "neusv/pipeline/perceive.hpp"
#include "neusv/pipeline/report.hpp"
#include "neusv/puls/translate.hpp"
#include "neusv/scoring/calibration_profile.hpp"

namespace neusv::pipeline {

struct EvaluationConfig {
    std::size_t window_size = 3;
    /// Overrides the profile's threshold when set.
    std::optional<double> gamma_fp;
    /// The client already reports calibrated confidences.
    bool calibrated_input = false;
    std::vector<EvaluationMode> modes{scoring::kAllModes.begin(), scoring::kAllModes.end()};
    std::size_t parallelism = kDefaultParallelism;
    checker::CheckOptions check;
    std::string tool_version;
    std::string timestamp;
    std::optional<VideoInfo> video;
};

struct EvaluationInput {
    std::string prompt;
    std::map<EvaluationMode, puls::ModeSpec> specs;
    /// Modes whose translation already failed.
    std::vector<puls::ModeFailure> spec_failures;
    std::string translator;
    std::vector<perception::FrameWindow> windows;
    std::vector<std::string> warnings;
};

/// Satisfaction probability of one mode's formula over a calibrated trace,
/// through the explicit video automaton.
checker::SatisfactionResult check_mode(const automaton::ConfidenceTrace& calibrated, const puls::ModeSpec& spec,
                                       const checker::CheckOptions& options = {});

/// Perceives every proposition the requested modes use, calibrates, checks
/// and scores each mode, and aggregates. Modes are checked concurrently.
/// A failing mode is recorded and left out of the final score.
///
/// Throws ErrorCode::InvalidThreshold for a bad threshold, ErrorCode::Schema
/// when the profile lacks a requested mode, perception errors with their
/// window and proposition, and ErrorCode::NoModes when every mode failed.
EvaluationReport evaluate(const EvaluationConfig& config, const scoring::CalibrationProfile& profile,
                          const EvaluationInput& input, perception::PerceptionClient& client);

/// 0 when every requested mode was scored, 2 when some failed.
int exit_code(const EvaluationReport& r);

} // namespace neusv::pipeline
