#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neusv/io/files.hpp"
#include "neusv/pipeline/report.hpp"

namespace neusv::pipeline {

struct SuiteEntry {
    std::string id;
    std::string theme;
    std::string complexity;
    std::string prompt;
};

/// One JSON object per line: {id, theme, complexity, prompt}. Blank lines are
/// skipped. Throws ErrorCode::Schema naming the line, also for repeated ids.
std::vector<SuiteEntry> parse_suite(const std::string& jsonl);
std::vector<SuiteEntry> load_suite(const std::filesystem::path& path);

/// Maps a 1..5 alignment rating onto [0, 1]. Throws ErrorCode::Domain.
double normalize_alignment_score(double rating);

/// CSV with columns video_id and alignment_score, normalized on load.
std::map<std::string, double> load_annotations(const std::filesystem::path& path);

/// Every *.json file in `dir`, sorted by filename.
std::vector<EvaluationReport> load_reports(const std::filesystem::path& dir);

struct BenchmarkRow {
    VideoInfo video;
    std::string theme;
    std::string complexity;
    std::map<EvaluationMode, ModeReport> modes;
    double final_score = 0.0;
    std::optional<double> human_score;
};

struct GroupSummary {
    std::string model;
    /// "overall", "theme" or "complexity".
    std::string group;
    std::string key;
    std::size_t count = 0;
    double mean_score = 0.0;
    std::map<EvaluationMode, double> mode_means;
    std::size_t annotated = 0;
    std::optional<double> pearson_r;
    /// Set instead of pearson_r when the correlation is undefined.
    std::optional<std::string> pearson_error;
};

struct BenchmarkSummary {
    std::vector<BenchmarkRow> rows;
    std::vector<GroupSummary> groups;
    std::vector<std::string> warnings;
};

/// Joins reports to the suite by prompt id and to annotations by video id,
/// then summarizes per model: overall, per theme and per complexity. Group
/// means run over the rows of the group; the overall row covers every
/// prompt. Reports without video metadata or with an unknown prompt id are
/// skipped with a warning, as are suite prompts a model has no report for.
BenchmarkSummary benchmark(std::span<const SuiteEntry> suite, std::span<const EvaluationReport> reports,
                           const std::map<std::string, double>& annotations);

io::Json summary_to_json(const BenchmarkSummary& s);
/// model,group,key,count,mean_score,<mode means>,annotated,pearson_r,pearson_error
std::string summary_csv(const BenchmarkSummary& s);
/// video_id,mode,satisfaction_probability,score,human_score; mode "final" carries
/// the aggregate.
std::string rows_csv(const BenchmarkSummary& s);

} // namespace neusv::pipeline
