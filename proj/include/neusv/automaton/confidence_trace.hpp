#pragma once

#include <cstddef>
#include <vector>

#include "neusv/tl/proposition.hpp"

namespace neusv::automaton {

/// Threshold-anchored piecewise-linear calibration of a raw detector
/// confidence: [0, gamma] maps linearly onto [0, 0.5] and [gamma, 1] onto
/// [0.5, 1], so the detector's decision threshold lands on 0.5.
///
/// Throws ErrorCode::Domain for c outside [0, 1] and
/// ErrorCode::InvalidThreshold for gamma outside (0, 1).
double calibrate_confidence(double c, double gamma_fp);

/// Confidence matrix over frame windows (rows) and propositions (columns).
/// Every entry lies in [0, 1] and there is at least one window.
class ConfidenceTrace {
public:
    ConfidenceTrace(tl::PropositionSet props, std::size_t window_size,
                    std::vector<std::vector<double>> windows, bool calibrated);

    const tl::PropositionSet& props() const noexcept { return props_; }
    std::size_t window_size() const noexcept { return window_size_; }
    std::size_t window_count() const noexcept { return windows_.size(); }
    const std::vector<std::vector<double>>& windows() const noexcept { return windows_; }
    const std::vector<double>& window(std::size_t j) const { return windows_.at(j); }
    double at(std::size_t window, std::size_t prop) const { return windows_.at(window).at(prop); }
    bool calibrated() const noexcept { return calibrated_; }

    /// Applies calibrate_confidence to every entry. A trace that is already
    /// calibrated is returned unchanged.
    ConfidenceTrace calibrate(double gamma_fp) const;

    /// Keeps only the columns named in `subset`, in `subset` order. Throws
    /// ErrorCode::PropositionMismatch if one of them is missing.
    ConfidenceTrace restrict_to(const tl::PropositionSet& subset) const;

    friend bool operator==(const ConfidenceTrace&, const ConfidenceTrace&) = default;

private:
    tl::PropositionSet props_;
    std::size_t window_size_;
    std::vector<std::vector<double>> windows_;
    bool calibrated_;
};

/// Products below this are pruned as floating-point dust.
inline constexpr double kPruneEpsilon = 1e-12;

struct WeightedValuation {
    tl::Valuation label;
    double probability;
};

/// Every valuation of window `j` with nonzero product probability, in
/// ascending bit order. The product runs over propositions in set order.
std::vector<WeightedValuation> window_distribution(const ConfidenceTrace& trace, std::size_t j);

} // namespace neusv::automaton
