#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neusv/io/files.hpp"
#include "neusv/scoring/evaluation_mode.hpp"
#include "neusv/tl/proposition.hpp"

namespace neusv::pipeline {

using scoring::EvaluationMode;

inline constexpr int kReportSchemaVersion = 1;

struct ModeReport {
    tl::PropositionSet propositions;
    std::string specification;
    double satisfaction_probability = 0.0;
    double score = 0.0;

    friend bool operator==(const ModeReport&, const ModeReport&) = default;
};

struct FailureRecord {
    EvaluationMode mode = EvaluationMode::OverallConsistency;
    /// snake_case ErrorCode name.
    std::string code;
    std::string message;

    friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

struct VideoInfo {
    std::string video_id;
    std::string prompt_id;
    std::string model;

    friend bool operator==(const VideoInfo&, const VideoInfo&) = default;
};

struct Provenance {
    /// "<name>:<model>" of the perception client.
    std::string perception;
    /// Identity of the translating LLM; empty when specs came from a file.
    std::string translator;
    std::string profile_version;
    std::string tool_version;
    std::string timestamp;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// All numbers are stored already rounded to 12 significant digits, so a
/// report equals its own serialization round trip.
struct EvaluationReport {
    int schema_version = kReportSchemaVersion;
    std::string prompt;
    std::optional<VideoInfo> video;
    std::size_t window_size = 0;
    std::size_t window_count = 0;
    double gamma_fp = 0.0;
    std::map<EvaluationMode, ModeReport> modes;
    double final_score = 0.0;
    std::vector<EvaluationMode> absent;
    std::vector<FailureRecord> failures;
    std::vector<std::string> warnings;
    Provenance provenance;

    friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

io::Json report_to_json(const EvaluationReport& r);
/// Throws ErrorCode::Schema for missing fields or an unknown schema version.
EvaluationReport report_from_json(const io::Json& j);
EvaluationReport load_report(const std::filesystem::path& path);
void save_report(const std::filesystem::path& path, const EvaluationReport& r);

} // namespace neusv::pipeline
