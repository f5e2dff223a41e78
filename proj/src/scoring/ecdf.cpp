#include "neusv/scoring/ecdf.hpp"

#include <algorithm>
#include <string>

#include "neusv/error.hpp"

namespace neusv::scoring {

EcdfDistribution::EcdfDistribution(EvaluationMode mode, std::vector<double> sorted_samples)
    : mode_(mode), samples_(std::move(sorted_samples)) {
    if (samples_.empty()) {
        throw Error(ErrorCode::EmptyDistribution, "no reference samples for mode " + std::string(to_string(mode_)));
    }
    for (double x : samples_) {
        if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::Domain, "reference sample outside [0, 1]");
    }
    if (!std::is_sorted(samples_.begin(), samples_.end())) {
        throw Error(ErrorCode::Schema, "reference samples for mode " + std::string(to_string(mode_)) +
                                           " are not sorted");
    }
}

EcdfDistribution build_ecdf(std::span<const double> results, EvaluationMode mode) {
    std::vector<double> samples(results.begin(), results.end());
    std::sort(samples.begin(), samples.end());
    return EcdfDistribution(mode, std::move(samples));
}

double ecdf_map(double p, const EcdfDistribution& d) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::Domain, "probability outside [0, 1]");
    const auto& s = d.samples();
    const auto at_or_below = std::upper_bound(s.begin(), s.end(), p) - s.begin();
    return static_cast<double>(at_or_below) / static_cast<double>(s.size());
}

} // namespace neusv::scoring
