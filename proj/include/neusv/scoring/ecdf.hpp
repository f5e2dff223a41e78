#pragma once

#include <span>
#include <vector>

#include "neusv/scoring/evaluation_mode.hpp"

namespace neusv::scoring {

/// Reference distribution of satisfaction probabilities for one mode.
/// Samples are sorted ascending, lie in [0, 1], and there is at least one.
class EcdfDistribution {
public:
    /// Throws ErrorCode::EmptyDistribution for no samples, ErrorCode::Domain
    /// for values outside [0, 1] and ErrorCode::Schema if unsorted.
    EcdfDistribution(EvaluationMode mode, std::vector<double> sorted_samples);

    EvaluationMode mode() const noexcept { return mode_; }
    const std::vector<double>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

    friend bool operator==(const EcdfDistribution&, const EcdfDistribution&) = default;

private:
    EvaluationMode mode_;
    std::vector<double> samples_;
};

/// Sorts a multiset of probabilities into a distribution.
EcdfDistribution build_ecdf(std::span<const double> results, EvaluationMode mode);

/// Fraction of samples <= p.
double ecdf_map(double p, const EcdfDistribution& d);

} // namespace neusv::scoring
