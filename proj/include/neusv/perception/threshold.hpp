#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace neusv::perception {

struct CalibrationSample {
    double confidence = 0.0;
    bool present = false;
};

struct ThresholdResult {
    double gamma = 0.0;
    double accuracy = 0.0;
};

/// Accuracy-maximizing threshold among the observed scores, classifying
/// positive iff score >= threshold. Ties go to the smallest threshold.
/// Throws ErrorCode::SingleClass unless both labels occur.
ThresholdResult find_optimal_threshold(std::span<const CalibrationSample> samples);

/// Fraction of samples classified correctly at `gamma`.
double accuracy_at(std::span<const CalibrationSample> samples, double gamma);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    /// Empty for the two synthetic endpoints.
    std::optional<double> threshold;
};

/// (0,0), one point per distinct score in descending order, then (1,1).
/// Throws ErrorCode::SingleClass unless both labels occur.
std::vector<RocPoint> roc_curve(std::span<const CalibrationSample> samples);

/// Trapezoidal area under the curve.
double roc_auc(std::span<const RocPoint> curve);

/// CSV with columns score,label; labels are 0/1 or true/false.
std::vector<CalibrationSample> read_samples_csv(const std::filesystem::path& path);
void write_roc_csv(const std::filesystem::path& path, std::span<const RocPoint> curve);

} // namespace neusv::perception
