#include "neusv/scoring/neusv_score.hpp"

#include "neusv/error.hpp"

namespace neusv::scoring {

NeusVScore aggregate(const std::map<EvaluationMode, ModeScore>& per_mode) {
    if (per_mode.empty()) throw Error(ErrorCode::NoModes, "no evaluation mode produced a score");
    NeusVScore out;
    out.per_mode = per_mode;
    double sum = 0.0;
    for (const auto& [mode, s] : per_mode) {
        if (!(s.score >= 0.0 && s.score <= 1.0) ||
            !(s.satisfaction_probability >= 0.0 && s.satisfaction_probability <= 1.0)) {
            throw Error(ErrorCode::Domain, "score for mode " + std::string(to_string(mode)) + " outside [0, 1]");
        }
        sum += s.score;
    }
    for (auto m : kAllModes) {
        if (!per_mode.contains(m)) out.absent.push_back(m);
    }
    out.final_score = sum / static_cast<double>(per_mode.size());
    return out;
}

} // namespace neusv::scoring
