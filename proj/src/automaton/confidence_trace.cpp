#include "neusv/automaton/confidence_trace.hpp"

#include <cmath>
#include <string>

#include "neusv/error.hpp"

namespace neusv::automaton {

namespace {

// Layers with more undetermined propositions than this are refused.
constexpr std::size_t kMaxUncertainPerWindow = 24;

} // namespace

double calibrate_confidence(double c, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(ErrorCode::InvalidThreshold, "false-positive threshold must lie in (0, 1), got " +
                                                     std::to_string(gamma));
    }
    if (!(c >= 0.0 && c <= 1.0)) {
        throw Error(ErrorCode::Domain, "confidence must lie in [0, 1], got " + std::to_string(c));
    }
    if (c < gamma) return 0.5 * c / gamma;
    return 0.5 + 0.5 * (c - gamma) / (1.0 - gamma);
}

ConfidenceTrace::ConfidenceTrace(tl::PropositionSet props, std::size_t window_size,
                                 std::vector<std::vector<double>> windows, bool calibrated)
    : props_(std::move(props)), window_size_(window_size), windows_(std::move(windows)), calibrated_(calibrated) {
    if (windows_.empty()) throw Error(ErrorCode::EmptyTrace, "confidence trace has no windows");
    if (window_size_ == 0) throw Error(ErrorCode::Domain, "window size must be at least 1");
    if (props_.size() > tl::Valuation::kMaxWidth) {
        throw Error(ErrorCode::WidthMismatch, "too many propositions for one valuation");
    }
    for (std::size_t j = 0; j < windows_.size(); ++j) {
        if (windows_[j].size() != props_.size()) {
            throw Error(ErrorCode::WidthMismatch, "window " + std::to_string(j) + " has " +
                                                      std::to_string(windows_[j].size()) + " confidences for " +
                                                      std::to_string(props_.size()) + " propositions");
        }
        for (double c : windows_[j]) {
            if (!(c >= 0.0 && c <= 1.0)) {
                throw Error(ErrorCode::Domain, "confidence " + std::to_string(c) + " in window " +
                                                   std::to_string(j) + " outside [0, 1]");
            }
        }
    }
}

ConfidenceTrace ConfidenceTrace::calibrate(double gamma_fp) const {
    if (calibrated_) return *this;
    auto rows = windows_;
    for (auto& row : rows) {
        for (double& c : row) c = calibrate_confidence(c, gamma_fp);
    }
    return ConfidenceTrace(props_, window_size_, std::move(rows), true);
}

ConfidenceTrace ConfidenceTrace::restrict_to(const tl::PropositionSet& subset) const {
    std::vector<std::size_t> columns;
    for (const auto& p : subset) {
        auto idx = props_.index_of(p.id);
        if (!idx) throw Error(ErrorCode::PropositionMismatch, "trace has no proposition '" + p.id + "'");
        columns.push_back(*idx);
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(windows_.size());
    for (const auto& row : windows_) {
        std::vector<double> r;
        r.reserve(columns.size());
        for (auto c : columns) r.push_back(row[c]);
        rows.push_back(std::move(r));
    }
    return ConfidenceTrace(subset, window_size_, std::move(rows), calibrated_);
}

std::vector<WeightedValuation> window_distribution(const ConfidenceTrace& trace, std::size_t j) {
    const auto& row = trace.window(j);
    const std::size_t width = row.size();
    std::uint64_t forced = 0;
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < width; ++i) {
        if (row[i] == 1.0) forced |= std::uint64_t{1} << i;
        else if (row[i] != 0.0) open.push_back(i);
    }
    if (open.size() > kMaxUncertainPerWindow) {
        throw Error(ErrorCode::StateExplosion, "window " + std::to_string(j) + " has " +
                                                   std::to_string(open.size()) + " undetermined propositions");
    }
    std::vector<WeightedValuation> out;
    out.reserve(std::size_t{1} << open.size());
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << open.size()); ++sub) {
        std::uint64_t bits = forced;
        for (std::size_t k = 0; k < open.size(); ++k) {
            if ((sub >> k) & 1u) bits |= std::uint64_t{1} << open[k];
        }
        double pr = 1.0;
        for (std::size_t i = 0; i < width; ++i) {
            pr *= ((bits >> i) & 1u) ? row[i] : (1.0 - row[i]);
        }
        if (pr >= kPruneEpsilon) out.push_back({tl::Valuation(width, bits), pr});
    }
    return out;
}

} // namespace neusv::automaton
