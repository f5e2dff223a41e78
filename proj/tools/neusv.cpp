#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "neusv/automaton/prism_export.hpp"
#include "neusv/automaton/video_automaton.hpp"
#include "neusv/checker/satisfaction.hpp"
#include "neusv/error.hpp"
#include "neusv/io/csv.hpp"
#include "neusv/io/files.hpp"
#include "neusv/io/formats.hpp"
#include "neusv/perception/threshold.hpp"
#include "neusv/perception/trace_client.hpp"
#include "neusv/perception/vlm_client.hpp"
#include "neusv/pipeline/benchmark.hpp"
#include "neusv/pipeline/evaluate.hpp"
#include "neusv/pipeline/frames.hpp"
#include "neusv/pipeline/perceive.hpp"
#include "neusv/puls/spec_file.hpp"
#include "neusv/puls/translate.hpp"
#include "neusv/scoring/ecdf.hpp"
#include "neusv/transport/http_chat.hpp"

#ifndef NEUSV_VERSION
#define NEUSV_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using namespace neusv;
using scoring::EvaluationMode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPartial = 2;

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

// Every long option NAME also reads NEUSV_NAME (dashes become underscores).
void bind_environment(CLI::App& app) {
    for (auto* opt : app.get_options()) {
        const auto& names = opt->get_lnames();
        if (names.empty() || names.front() == "help" || names.front() == "version") continue;
        std::string env = "NEUSV_" + names.front();
        std::transform(env.begin(), env.end(), env.begin(),
                       [](unsigned char c) { return c == '-' ? '_' : static_cast<char>(std::toupper(c)); });
        opt->envname(env);
    }
    for (auto* sub : app.get_subcommands({})) bind_environment(*sub);
}

std::vector<EvaluationMode> parse_modes(const std::vector<std::string>& names) {
    if (names.empty()) return {scoring::kAllModes.begin(), scoring::kAllModes.end()};
    std::set<EvaluationMode> modes;
    for (const auto& n : names) modes.insert(scoring::parse_mode(n));
    return {modes.begin(), modes.end()};
}

std::string utc_timestamp(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// --timestamp, else SOURCE_DATE_EPOCH, else the current time.
std::string resolve_timestamp(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        return utc_timestamp(static_cast<std::time_t>(io::parse_number(epoch, "SOURCE_DATE_EPOCH")));
    }
    return utc_timestamp(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

void emit(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
    } else {
        io::write_file(out, content);
    }
}

struct ChatOptions {
    std::string endpoint;
    std::string model;
    std::string api_key;
    int timeout_seconds = 60;

    void add(CLI::App& app, const std::string& prefix) {
        app.add_option("--" + prefix + "-endpoint", endpoint, "Chat-completions base URL");
        app.add_option("--" + prefix + "-model", model, "Model name");
        app.add_option("--" + prefix + "-api-key", api_key, "Bearer token");
        app.add_option("--" + prefix + "-timeout", timeout_seconds, "Request timeout in seconds")
            ->check(CLI::PositiveNumber);
    }

    std::shared_ptr<transport::ChatTransport> transport(const std::string& what) const {
        if (endpoint.empty() || model.empty()) {
            throw Error(ErrorCode::Schema, what + " needs an endpoint and a model");
        }
        return std::make_shared<transport::HttpChatTransport>(
            transport::HttpChatConfig{endpoint, api_key, std::chrono::seconds(timeout_seconds)});
    }
};

struct TranslatorOptions {
    ChatOptions chat;
    std::string fewshot_dir = "data/fewshot";
    std::string replay;
    bool record = false;

    void add(CLI::App& app) {
        chat.add(app, "llm");
        app.add_option("--fewshot-dir", fewshot_dir, "Few-shot store root (t2p/, t2tl/)");
        app.add_option("--replay", replay, "Recorded LLM responses to answer from");
        app.add_flag("--record", record, "Forward replay misses to the LLM and save them");
    }

    puls::Translation run(const std::string& prompt, const std::vector<EvaluationMode>& modes,
                          std::string& identity) const {
        const auto library = puls::FewShotLibrary::load_directory(fewshot_dir);
        std::shared_ptr<puls::LlmClient> upstream;
        if (replay.empty() || record) {
            puls::ChatLlmConfig cfg;
            cfg.model = chat.model;
            upstream = std::make_shared<puls::ChatLlmClient>(chat.transport("translation"), cfg);
        }
        if (replay.empty()) {
            identity = upstream->identity();
            return puls::translate_all_modes(*upstream, library, prompt, modes);
        }
        auto client = puls::ReplayLlmClient::load(replay, upstream);
        identity = client->identity();
        auto result = puls::translate_all_modes(*client, library, prompt, modes);
        if (record) client->save(replay);
        return result;
    }
};

struct PerceptionOptions {
    std::string trace;
    std::string frames;
    ChatOptions chat;
    int context_limit = 3;
    std::size_t parallelism = pipeline::kDefaultParallelism;

    void add(CLI::App& app, bool allow_trace) {
        if (allow_trace) app.add_option("--trace", trace, "Trace file of precomputed confidences");
        app.add_option("--frames", frames, "Directory of frame images, ordered by filename");
        chat.add(app, "vlm");
        app.add_option("--context-limit", context_limit, "Most frames per VLM request")->check(CLI::PositiveNumber);
        app.add_option("--parallelism", parallelism, "Concurrent perception requests")->check(CLI::PositiveNumber);
    }

    std::unique_ptr<perception::PerceptionClient> vlm() const {
        perception::VlmConfig cfg;
        cfg.model = chat.model;
        cfg.context_limit = static_cast<std::size_t>(context_limit);
        return std::make_unique<perception::VlmClient>(chat.transport("perception"), cfg);
    }

    pipeline::Windowing frame_windows(std::size_t window_size) const {
        const auto listed = pipeline::list_frames(frames);
        auto w = pipeline::window_frames(listed, window_size);
        if (w.dropped_frames > 0) {
            warn(std::to_string(w.dropped_frames) + " trailing frame(s) do not fill a window and were dropped");
        }
        return w;
    }
};

tl::PropositionSet union_of(const puls::SpecFile& spec) {
    tl::PropositionSet all;
    for (const auto& [mode, ms] : spec.modes) {
        for (const auto& p : ms.propositions) all.add(p);
    }
    return all;
}

automaton::ConfidenceTrace calibrated_trace(const std::string& path, std::optional<double> gamma,
                                            const std::string& profile) {
    auto trace = io::load_trace(path);
    if (trace.calibrated()) return trace;
    if (!gamma && !profile.empty()) gamma = io::load_profile(profile).gamma_fp;
    if (!gamma) throw Error(ErrorCode::Uncalibrated, "trace is raw; pass --gamma or --profile");
    return trace.calibrate(*gamma);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal-logic scoring of generated videos against their prompts"};
    app.set_version_flag("--version", std::string(NEUSV_VERSION));
    app.require_subcommand(1);

    // translate
    auto* translate = app.add_subcommand("translate", "Prompt to per-mode specifications");
    std::string t_prompt, t_out;
    std::vector<std::string> t_modes;
    TranslatorOptions t_llm;
    translate->add_option("--prompt", t_prompt, "Text prompt")->required();
    translate->add_option("--modes", t_modes, "Evaluation modes (default: all four)");
    translate->add_option("-o,--out", t_out, "Spec file to write (default: stdout)");
    t_llm.add(*translate);

    // perceive
    auto* perceive = app.add_subcommand("perceive", "Frames to a raw confidence trace");
    std::string p_spec, p_out;
    std::vector<std::string> p_props;
    std::size_t p_window = 3;
    PerceptionOptions p_opts;
    perceive->add_option("--spec-file", p_spec, "Take propositions from this spec file");
    perceive->add_option("--prop", p_props, "Proposition phrase (repeatable)");
    perceive->add_option("-w,--window-size", p_window, "Frames per window")->check(CLI::PositiveNumber);
    perceive->add_option("-o,--out", p_out, "Trace file to write (default: stdout)");
    p_opts.add(*perceive, false);

    // score
    auto* score = app.add_subcommand("score", "Satisfaction probability of each mode over a trace");
    std::string s_trace, s_spec, s_profile, s_method = "dp", s_out;
    std::optional<double> s_gamma;
    std::vector<std::string> s_modes;
    std::size_t s_cap = checker::kDefaultResidualCap;
    score->add_option("--trace", s_trace, "Trace file")->required();
    score->add_option("--spec-file", s_spec, "Spec file")->required();
    score->add_option("--gamma", s_gamma, "False-positive threshold for raw traces")->check(CLI::Range(0.0, 1.0));
    score->add_option("--profile", s_profile, "Take the threshold from this profile");
    score->add_option("--modes", s_modes, "Evaluation modes (default: those in the spec file)");
    score->add_option("--method", s_method, "dp, fused or brute_force")
        ->check(CLI::IsMember({"dp", "fused", "brute_force"}));
    score->add_option("--residual-cap", s_cap, "Most distinct residual formulas")->check(CLI::PositiveNumber);
    score->add_option("-o,--out", s_out, "JSON to write (default: stdout)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "End-to-end score of one video");
    std::string e_prompt, e_spec, e_profile, e_out, e_timestamp, e_video, e_prompt_id, e_model;
    std::optional<double> e_gamma;
    std::vector<std::string> e_modes;
    std::size_t e_window = 3;
    TranslatorOptions e_llm;
    PerceptionOptions e_perc;
    evaluate->add_option("--prompt", e_prompt, "Text prompt (default: the spec file's)");
    evaluate->add_option("--spec-file", e_spec, "Use these specifications instead of translating");
    evaluate->add_option("--profile", e_profile, "Calibration profile")->required();
    evaluate->add_option("--gamma", e_gamma, "Override the profile threshold")->check(CLI::Range(0.0, 1.0));
    evaluate->add_option("--modes", e_modes, "Evaluation modes (default: all four)");
    evaluate->add_option("-w,--window-size", e_window, "Frames per window")->check(CLI::PositiveNumber);
    evaluate->add_option("-o,--out", e_out, "Report to write (default: stdout)");
    evaluate->add_option("--timestamp", e_timestamp, "Report timestamp (default: SOURCE_DATE_EPOCH or now)");
    evaluate->add_option("--video-id", e_video, "Video id for benchmarking");
    evaluate->add_option("--prompt-id", e_prompt_id, "Suite prompt id for benchmarking");
    evaluate->add_option("--model", e_model, "Video generator name for benchmarking");
    e_llm.add(*evaluate);
    e_perc.add(*evaluate, true);

    // calibrate-threshold
    auto* calibrate = app.add_subcommand("calibrate-threshold", "Accuracy-maximizing threshold from labeled scores");
    std::string c_samples, c_roc, c_out;
    calibrate->add_option("--samples", c_samples, "CSV with columns score,label")->required();
    calibrate->add_option("--roc-out", c_roc, "ROC curve CSV to write");
    calibrate->add_option("-o,--out", c_out, "JSON to write (default: stdout)");

    // build-ecdf
    auto* build_ecdf = app.add_subcommand("build-ecdf", "Calibration profile from reference probabilities");
    std::vector<std::string> b_scores;
    std::string b_samples, b_version, b_provenance, b_out;
    double b_gamma = 0.5;
    build_ecdf->add_option("--scores", b_scores, "Output files of the score subcommand");
    build_ecdf->add_option("--samples", b_samples, "CSV with columns mode,satisfaction_probability");
    build_ecdf->add_option("--gamma", b_gamma, "Threshold recorded in the profile")->check(CLI::Range(0.0, 1.0));
    build_ecdf->add_option("--version-tag", b_version, "Profile version")->required();
    build_ecdf->add_option("--provenance", b_provenance, "Where the reference data came from")->required();
    build_ecdf->add_option("-o,--out", b_out, "Profile to write (default: stdout)");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Group means and correlation with human ratings");
    std::string k_suite, k_reports, k_annotations, k_out_dir;
    bench->add_option("--suite", k_suite, "Prompt suite JSONL")->required();
    bench->add_option("--reports", k_reports, "Directory of evaluation reports")->required();
    bench->add_option("--annotations", k_annotations, "CSV with columns video_id,alignment_score")->required();
    bench->add_option("--out-dir", k_out_dir, "Writes summary.json, summary.csv and rows.csv")->required();

    // export-automaton
    auto* exporter = app.add_subcommand("export-automaton", "PRISM-style dump of a trace's video automaton");
    std::string x_trace, x_spec, x_mode, x_profile, x_out;
    std::optional<double> x_gamma;
    exporter->add_option("--trace", x_trace, "Trace file")->required();
    exporter->add_option("--spec-file", x_spec, "Restrict to one mode's propositions");
    exporter->add_option("--mode", x_mode, "Mode to restrict to (with --spec-file)");
    exporter->add_option("--gamma", x_gamma, "False-positive threshold for raw traces")->check(CLI::Range(0.0, 1.0));
    exporter->add_option("--profile", x_profile, "Take the threshold from this profile");
    exporter->add_option("-o,--out", x_out, "File to write (default: stdout)");

    bind_environment(app);
    CLI11_PARSE(app, argc, argv);

    try {
        if (translate->parsed()) {
            std::string identity;
            auto result = t_llm.run(t_prompt, parse_modes(t_modes), identity);
            for (const auto& f : result.failures) {
                warn(std::string(scoring::to_string(f.mode)) + ": " + f.message);
            }
            emit(t_out, io::dump_json(puls::spec_to_json({t_prompt, result.specs})));
            return result.failures.empty() ? kExitOk : kExitPartial;
        }

        if (perceive->parsed()) {
            tl::PropositionSet props;
            if (!p_spec.empty()) props = union_of(puls::load_spec_file(p_spec));
            for (const auto& phrase : p_props) props.add(tl::normalize_proposition(phrase));
            if (props.empty()) throw Error(ErrorCode::EmptyProposition, "give --spec-file or --prop");
            if (p_opts.frames.empty()) throw Error(ErrorCode::Schema, "--frames is required");
            const auto windows = p_opts.frame_windows(p_window);
            auto client = p_opts.vlm();
            const auto trace = pipeline::perceive_trace(*client, props, windows.windows, p_window, p_opts.parallelism);
            emit(p_out, io::dump_json(io::trace_to_json(trace)));
            return kExitOk;
        }

        if (score->parsed()) {
            const auto trace = calibrated_trace(s_trace, s_gamma, s_profile);
            const auto spec = puls::load_spec_file(s_spec);
            checker::CheckOptions opts{s_cap};
            io::Json modes = io::Json::object();
            std::vector<EvaluationMode> wanted;
            if (s_modes.empty()) {
                for (const auto& [m, _] : spec.modes) wanted.push_back(m);
            } else {
                wanted = parse_modes(s_modes);
            }
            int status = kExitOk;
            for (auto mode : wanted) {
                const std::string name(scoring::to_string(mode));
                auto it = spec.modes.find(mode);
                try {
                    if (it == spec.modes.end()) throw Error(ErrorCode::MissingKey, "spec file has no mode " + name);
                    const auto sub = trace.restrict_to(it->second.propositions);
                    checker::SatisfactionResult r;
                    if (s_method == "fused") {
                        r = checker::satisfaction_probability(sub, it->second.formula, opts);
                    } else if (s_method == "brute_force") {
                        r = checker::brute_force_probability(automaton::build_automaton(sub), it->second.formula);
                    } else {
                        r = checker::satisfaction_probability(automaton::build_automaton(sub), it->second.formula, opts);
                    }
                    modes[name] = {{"satisfaction_probability", io::round12(r.probability)},
                                   {"method", std::string(checker::to_string(r.method))},
                                   {"state_count", r.state_count},
                                   {"residual_count", r.residual_count},
                                   {"specification", tl::to_string(it->second.formula)}};
                } catch (const Error& e) {
                    warn(name + ": " + e.what());
                    modes[name] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
                    status = kExitPartial;
                }
            }
            emit(s_out, io::dump_json({{"prompt", spec.prompt}, {"modes", modes}}));
            return status;
        }

        if (evaluate->parsed()) {
            const auto profile = io::load_profile(e_profile);
            pipeline::EvaluationConfig config;
            config.gamma_fp = e_gamma;
            config.modes = parse_modes(e_modes);
            config.parallelism = e_perc.parallelism;
            config.tool_version = NEUSV_VERSION;
            config.timestamp = resolve_timestamp(e_timestamp);
            if (!e_video.empty() || !e_prompt_id.empty() || !e_model.empty()) {
                config.video = pipeline::VideoInfo{e_video, e_prompt_id, e_model};
            }

            pipeline::EvaluationInput input;
            if (!e_spec.empty()) {
                auto spec = puls::load_spec_file(e_spec);
                input.prompt = e_prompt.empty() ? spec.prompt : e_prompt;
                input.specs = std::move(spec.modes);
            } else {
                if (e_prompt.empty()) throw Error(ErrorCode::Schema, "give --prompt or --spec-file");
                input.prompt = e_prompt;
                auto t = e_llm.run(e_prompt, config.modes, input.translator);
                input.specs = std::move(t.specs);
                input.spec_failures = std::move(t.failures);
            }

            std::unique_ptr<perception::PerceptionClient> client;
            if (!e_perc.trace.empty()) {
                auto tc = perception::load_trace_client(e_perc.trace);
                config.window_size = tc->trace().window_size();
                config.calibrated_input = tc->trace().calibrated();
                input.windows = pipeline::indexed_windows(tc->trace().window_count());
                client = std::move(tc);
            } else if (!e_perc.frames.empty()) {
                config.window_size = e_window;
                auto w = e_perc.frame_windows(e_window);
                if (w.dropped_frames > 0) {
                    input.warnings.push_back(std::to_string(w.dropped_frames) +
                                             " trailing frame(s) did not fill a window and were dropped");
                }
                input.windows = std::move(w.windows);
                client = e_perc.vlm();
            } else {
                throw Error(ErrorCode::Schema, "give --trace or --frames");
            }

            const auto report = pipeline::evaluate(config, profile, input, *client);
            for (const auto& f : report.failures) warn(std::string(scoring::to_string(f.mode)) + ": " + f.message);
            emit(e_out, io::dump_json(pipeline::report_to_json(report)));
            return pipeline::exit_code(report) == 0 ? kExitOk : kExitPartial;
        }

        if (calibrate->parsed()) {
            const auto samples = perception::read_samples_csv(c_samples);
            const auto best = perception::find_optimal_threshold(samples);
            const auto curve = perception::roc_curve(samples);
            if (!c_roc.empty()) perception::write_roc_csv(c_roc, curve);
            emit(c_out, io::dump_json({{"gamma_fp", io::round12(best.gamma)},
                                       {"accuracy", io::round12(best.accuracy)},
                                       {"auc", io::round12(perception::roc_auc(curve))},
                                       {"sample_count", samples.size()}}));
            return kExitOk;
        }

        if (build_ecdf->parsed()) {
            std::map<EvaluationMode, std::vector<double>> samples;
            for (const auto& path : b_scores) {
                const auto j = io::read_json_file(path);
                for (const auto& [name, m] : io::require(j, "modes", path).items()) {
                    if (m.contains("error")) {
                        warn(path + ": mode " + name + " has no probability; skipped");
                        continue;
                    }
                    samples[scoring::parse_mode(name)].push_back(io::require_number(m, "satisfaction_probability", path));
                }
            }
            if (!b_samples.empty()) {
                const auto table = io::read_csv(b_samples);
                const auto mode_col = table.column("mode");
                const auto p_col = table.column("satisfaction_probability");
                for (const auto& row : table.rows) {
                    samples[scoring::parse_mode(row[mode_col])].push_back(io::parse_number(row[p_col], b_samples));
                }
            }
            if (samples.empty()) throw Error(ErrorCode::EmptyDistribution, "no reference probabilities given");
            scoring::CalibrationProfile profile;
            profile.version = b_version;
            profile.gamma_fp = b_gamma;
            profile.provenance = b_provenance;
            for (auto& [mode, xs] : samples) profile.ecdf.emplace(mode, scoring::build_ecdf(xs, mode));
            emit(b_out, io::dump_json(io::profile_to_json(profile)));
            return kExitOk;
        }

        if (bench->parsed()) {
            const auto suite = pipeline::load_suite(k_suite);
            const auto reports = pipeline::load_reports(k_reports);
            const auto annotations = pipeline::load_annotations(k_annotations);
            const auto summary = pipeline::benchmark(suite, reports, annotations);
            for (const auto& w : summary.warnings) warn(w);
            const fs::path dir(k_out_dir);
            io::write_file(dir / "summary.json", io::dump_json(pipeline::summary_to_json(summary)));
            io::write_file(dir / "summary.csv", pipeline::summary_csv(summary));
            io::write_file(dir / "rows.csv", pipeline::rows_csv(summary));
            return kExitOk;
        }

        if (exporter->parsed()) {
            auto trace = calibrated_trace(x_trace, x_gamma, x_profile);
            if (!x_spec.empty()) {
                const auto spec = puls::load_spec_file(x_spec);
                if (x_mode.empty()) {
                    trace = trace.restrict_to(union_of(spec));
                } else {
                    const auto mode = scoring::parse_mode(x_mode);
                    auto it = spec.modes.find(mode);
                    if (it == spec.modes.end()) throw Error(ErrorCode::MissingKey, "spec file has no mode " + x_mode);
                    trace = trace.restrict_to(it->second.propositions);
                }
            }
            emit(x_out, automaton::export_prism(automaton::build_automaton(trace)));
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
