#include "neusv/pipeline/evaluate.hpp"

#include <algorithm>
#include <future>

#include "neusv/automaton/video_automaton.hpp"
#include "neusv/error.hpp"
#include "neusv/io/files.hpp"
#include "neusv/scoring/ecdf.hpp"
#include "neusv/scoring/neusv_score.hpp"

namespace neusv::pipeline {

checker::SatisfactionResult check_mode(const automaton::ConfidenceTrace& calibrated, const puls::ModeSpec& spec,
                                       const checker::CheckOptions& options) {
    const auto automaton = automaton::build_automaton(calibrated.restrict_to(spec.propositions));
    return checker::satisfaction_probability(automaton, spec.formula, options);
}

namespace {

struct ModeOutcome {
    std::optional<ModeReport> report;
    std::optional<FailureRecord> failure;
};

ModeOutcome run_mode(EvaluationMode mode, const puls::ModeSpec& spec, const automaton::ConfidenceTrace& calibrated,
                     const scoring::EcdfDistribution& reference, const checker::CheckOptions& options) {
    try {
        const auto result = check_mode(calibrated, spec, options);
        ModeReport r;
        r.propositions = spec.propositions;
        r.specification = tl::to_string(spec.formula);
        r.satisfaction_probability = io::round12(result.probability);
        r.score = io::round12(scoring::ecdf_map(result.probability, reference));
        return {std::move(r), std::nullopt};
    } catch (const Error& e) {
        return {std::nullopt, FailureRecord{mode, std::string(to_string(e.code())), e.what()}};
    }
}

} // namespace

EvaluationReport evaluate(const EvaluationConfig& config, const scoring::CalibrationProfile& profile,
                          const EvaluationInput& input, perception::PerceptionClient& client) {
    const double gamma = config.gamma_fp.value_or(profile.gamma_fp);
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(ErrorCode::InvalidThreshold, "threshold must lie strictly between 0 and 1");
    }
    for (auto mode : config.modes) profile.distribution(mode);

    EvaluationReport report;
    report.prompt = input.prompt;
    report.video = config.video;
    report.window_size = config.window_size;
    report.window_count = input.windows.size();
    report.gamma_fp = io::round12(gamma);
    report.warnings = input.warnings;
    report.provenance = {client.identity().name + ":" + client.identity().model, input.translator, profile.version,
                         config.tool_version, config.timestamp};

    std::vector<EvaluationMode> runnable;
    tl::PropositionSet needed;
    for (auto mode : config.modes) {
        auto failed = std::find_if(input.spec_failures.begin(), input.spec_failures.end(),
                                   [&](const auto& f) { return f.mode == mode; });
        if (failed != input.spec_failures.end()) {
            report.failures.push_back({mode, std::string(to_string(failed->code)), failed->message});
            continue;
        }
        auto it = input.specs.find(mode);
        if (it == input.specs.end()) {
            report.failures.push_back({mode, std::string(to_string(ErrorCode::MissingKey)), "no specification for mode"});
            continue;
        }
        runnable.push_back(mode);
        for (const auto& p : it->second.propositions) needed.add(p);
    }
    if (runnable.empty()) throw Error(ErrorCode::NoModes, "no mode has a specification to check");

    auto perceived = perceive_trace(client, needed, input.windows, config.window_size, config.parallelism);
    const auto calibrated = config.calibrated_input
                                ? automaton::ConfidenceTrace(perceived.props(), perceived.window_size(),
                                                             perceived.windows(), true)
                                : perceived.calibrate(gamma);

    std::vector<std::future<ModeOutcome>> jobs;
    for (auto mode : runnable) {
        jobs.push_back(std::async(std::launch::async, run_mode, mode, std::cref(input.specs.at(mode)),
                                  std::cref(calibrated), std::cref(profile.distribution(mode)),
                                  std::cref(config.check)));
    }
    std::map<EvaluationMode, scoring::ModeScore> scores;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        auto outcome = jobs[k].get();
        if (outcome.failure) {
            report.failures.push_back(std::move(*outcome.failure));
            continue;
        }
        scores[runnable[k]] = {outcome.report->satisfaction_probability, outcome.report->score};
        report.modes.emplace(runnable[k], std::move(*outcome.report));
    }
    std::sort(report.failures.begin(), report.failures.end(),
              [](const auto& a, const auto& b) { return a.mode < b.mode; });
    if (scores.empty()) {
        std::string msg = "every mode failed";
        for (const auto& f : report.failures) msg += "; " + std::string(scoring::to_string(f.mode)) + ": " + f.message;
        throw Error(ErrorCode::NoModes, msg);
    }

    const auto total = scoring::aggregate(scores);
    report.final_score = io::round12(total.final_score);
    report.absent = total.absent;
    return report;
}

int exit_code(const EvaluationReport& r) { return r.failures.empty() ? 0 : 2; }

} // namespace neusv::pipeline
