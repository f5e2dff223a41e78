#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "neusv/error.hpp"
#include "neusv/io/files.hpp"
#include "neusv/io/formats.hpp"
#include "neusv/perception/trace_client.hpp"
#include "neusv/pipeline/benchmark.hpp"
#include "neusv/pipeline/evaluate.hpp"
#include "neusv/pipeline/frames.hpp"
#include "neusv/pipeline/perceive.hpp"
#include "neusv/puls/spec_file.hpp"
#include "neusv/tl/parser.hpp"

using namespace neusv;
using namespace neusv::pipeline;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Io;
}

const fs::path kRoot = NEUSV_SOURCE_DIR;

std::vector<fs::path> fake_frames(std::size_t n) {
    std::vector<fs::path> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("f" + std::to_string(i) + ".png");
    return out;
}

// Confidence is a fixed function of (window, proposition); counts overlap.
class SlowClient final : public perception::PerceptionClient {
public:
    std::atomic<int> in_flight{0};
    std::atomic<int> peak{0};
    std::size_t fail_window = SIZE_MAX;

    double confidence(const tl::Proposition& p, const perception::FrameWindow& w) override {
        const int now = ++in_flight;
        int seen = peak.load();
        while (now > seen && !peak.compare_exchange_weak(seen, now)) {
        }
        std::this_thread::sleep_for(std::chrono::microseconds(200));
        --in_flight;
        if (w.index >= fail_window) throw Error(ErrorCode::Transport, "down");
        return static_cast<double>((w.index * 7 + p.id.size() * 3) % 10) / 10.0;
    }
    perception::ClientIdentity identity() const override { return {"slow", "test"}; }
};

scoring::CalibrationProfile flat_profile(std::vector<double> samples, double gamma = 0.5) {
    scoring::CalibrationProfile p;
    p.version = "test";
    p.gamma_fp = gamma;
    p.provenance = "unit test";
    for (auto m : scoring::kAllModes) p.ecdf.emplace(m, scoring::build_ecdf(samples, m));
    return p;
}

puls::ModeSpec mode_spec(EvaluationMode mode, std::initializer_list<const char*> props, const std::string& formula) {
    puls::ModeSpec s;
    s.mode = mode;
    for (auto p : props) s.propositions.add(tl::normalize_proposition(p));
    s.formula = tl::parse_formula(formula, s.propositions);
    return s;
}

EvaluationReport run_trace(const automaton::ConfidenceTrace& trace, const scoring::CalibrationProfile& profile,
                           EvaluationInput input, EvaluationConfig config = {}) {
    perception::TraceClient client(trace, "memory");
    config.window_size = trace.window_size();
    config.calibrated_input = trace.calibrated();
    input.windows = indexed_windows(trace.window_count());
    return evaluate(config, profile, input, client);
}

} // namespace

TEST(Windowing, StrideAndRemainder) {
    auto nine = window_frames(fake_frames(9), 3);
    ASSERT_EQ(nine.windows.size(), 3u);
    EXPECT_EQ(nine.dropped_frames, 0u);
    EXPECT_EQ(nine.windows[2].frames.front(), "f6.png");
    EXPECT_EQ(nine.windows[2].index, 2u);

    auto ten = window_frames(fake_frames(10), 3);
    EXPECT_EQ(ten.windows.size(), 3u);
    EXPECT_EQ(ten.dropped_frames, 1u);
    for (const auto& w : ten.windows) EXPECT_EQ(w.frames.size(), 3u);

    EXPECT_EQ(code_of([] { window_frames(fake_frames(2), 3); }), ErrorCode::TooFewFrames);
    EXPECT_EQ(code_of([] { window_frames(fake_frames(2), 0); }), ErrorCode::Domain);
}

TEST(Windowing, FramesListedByFilename) {
    const auto dir = fs::temp_directory_path() / "neusv_frames_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const char* name : {"frame_10.png", "frame_02.JPG", "frame_01.png", "notes.txt"}) io::write_file(dir / name, "x");
    const auto frames = list_frames(dir);
    ASSERT_EQ(frames.size(), 3u);
    EXPECT_EQ(frames[0].filename(), "frame_01.png");
    EXPECT_EQ(frames[1].filename(), "frame_02.JPG");
    EXPECT_EQ(frames[2].filename(), "frame_10.png");
    fs::remove_all(dir);
    EXPECT_EQ(code_of([&] { list_frames(dir); }), ErrorCode::Io);
}

TEST(Perceive, ResultIndependentOfParallelismAndCapped) {
    tl::PropositionSet props;
    for (const char* p : {"a", "bb", "ccc"}) props.add(tl::normalize_proposition(p));
    const auto windows = indexed_windows(12);
    SlowClient serial;
    const auto one = perceive_trace(serial, props, windows, 3, 1);
    EXPECT_EQ(serial.peak.load(), 1);
    SlowClient parallel;
    const auto four = perceive_trace(parallel, props, windows, 3, 4);
    EXPECT_LE(parallel.peak.load(), 4);
    EXPECT_EQ(one, four);
    EXPECT_FALSE(four.calibrated());
    EXPECT_EQ(four.at(5, 1), static_cast<double>((5 * 7 + 2 * 3) % 10) / 10.0);
}

TEST(Perceive, FirstFailureInOrderIsReported) {
    tl::PropositionSet props;
    for (const char* p : {"a", "b"}) props.add(tl::normalize_proposition(p));
    for (int run = 0; run < 5; ++run) {
        SlowClient client;
        client.fail_window = 3;
        try {
            perceive_trace(client, props, indexed_windows(10), 1, 4);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::Transport);
            EXPECT_EQ(std::string(e.what()), "window 3, proposition 'a': down");
        }
    }
    SlowClient ok;
    EXPECT_EQ(code_of([&] { perceive_trace(ok, {}, indexed_windows(2), 1); }), ErrorCode::EmptyProposition);
    EXPECT_EQ(code_of([&] { perceive_trace(ok, props, {}, 1); }), ErrorCode::EmptyTrace);
}

TEST(Evaluate, CertaintyChain) {
    automaton::ConfidenceTrace trace(tl::PropositionSet(std::vector<tl::Proposition>{{"p", "p"}}), 3, {{1.0}, {1.0}, {1.0}}, false);
    EvaluationInput in;
    in.prompt = "p always";
    in.specs.emplace(EvaluationMode::OverallConsistency, mode_spec(EvaluationMode::OverallConsistency, {"p"}, "G \"p\""));
    EvaluationConfig cfg;
    cfg.modes = {EvaluationMode::OverallConsistency};
    const auto r = run_trace(trace, flat_profile({0.2, 0.7, 1.0}), in, cfg);
    const auto& m = r.modes.at(EvaluationMode::OverallConsistency);
    EXPECT_EQ(m.satisfaction_probability, 1.0);
    EXPECT_EQ(m.score, 1.0);
    EXPECT_EQ(r.final_score, 1.0);
    EXPECT_EQ(r.absent.size(), 3u);
    EXPECT_EQ(exit_code(r), 0);
}

TEST(Evaluate, WorkedExampleConjunction) {
    tl::PropositionSet props;
    for (const char* p : {"p1", "p2", "p3", "p4", "p5"}) props.add(tl::normalize_proposition(p));
    automaton::ConfidenceTrace trace(props, 1, {{1.0, 1.0, 0.0, 0.8, 0.9}}, true);
    EvaluationInput in;
    in.specs.emplace(EvaluationMode::ObjectExistence,
                     mode_spec(EvaluationMode::ObjectExistence, {"p1", "p2", "p3", "p4", "p5"},
                               "\"p1\" & \"p2\" & !\"p3\" & \"p4\" & \"p5\""));
    EvaluationConfig cfg;
    cfg.modes = {EvaluationMode::ObjectExistence};
    const auto r = run_trace(trace, flat_profile({0.5}), in, cfg);
    EXPECT_NEAR(r.modes.at(EvaluationMode::ObjectExistence).satisfaction_probability, 0.72, 1e-12);
    EXPECT_EQ(r.modes.at(EvaluationMode::ObjectExistence).score, 1.0);
}

TEST(Evaluate, PartialFailuresAreRecorded) {
    automaton::ConfidenceTrace trace(tl::PropositionSet(std::vector<tl::Proposition>{{"a", "a"}, {"b", "b"}}), 1, {{0.9, 0.1}, {0.2, 0.8}}, false);
    EvaluationInput in;
    in.specs.emplace(EvaluationMode::ObjectExistence,
                     mode_spec(EvaluationMode::ObjectExistence, {"a", "b"}, "\"a\" & \"b\""));
    in.specs.emplace(EvaluationMode::SpatialRelationship,
                     mode_spec(EvaluationMode::SpatialRelationship, {"a", "b"}, "G (\"a\" -> X (\"b\" U \"a\"))"));
    in.spec_failures.push_back({EvaluationMode::ObjectActionAlignment, ErrorCode::TranslationFailed, "gave up"});
    EvaluationConfig cfg;
    cfg.check.residual_cap = 3;
    const auto r = run_trace(trace, flat_profile({0.1, 0.9}), in, cfg);
    EXPECT_EQ(r.modes.size(), 1u);
    ASSERT_EQ(r.failures.size(), 3u);
    EXPECT_EQ(r.failures[0].mode, EvaluationMode::SpatialRelationship);
    EXPECT_EQ(r.failures[0].code, "state_explosion");
    EXPECT_EQ(r.failures[1].code, "translation_failed");
    EXPECT_EQ(r.failures[2].mode, EvaluationMode::OverallConsistency);
    EXPECT_EQ(r.failures[2].code, "missing_key");
    EXPECT_EQ(exit_code(r), 2);

    EvaluationInput none;
    EXPECT_EQ(code_of([&] { run_trace(trace, flat_profile({0.5}), none); }), ErrorCode::NoModes);
}

TEST(Evaluate, ProfileAndThresholdChecks) {
    automaton::ConfidenceTrace trace(tl::PropositionSet(std::vector<tl::Proposition>{{"a", "a"}}), 1, {{0.9}}, false);
    EvaluationInput in;
    in.specs.emplace(EvaluationMode::ObjectExistence, mode_spec(EvaluationMode::ObjectExistence, {"a"}, "\"a\""));
    scoring::CalibrationProfile partial;
    partial.version = "v";
    partial.gamma_fp = 0.5;
    partial.ecdf.emplace(EvaluationMode::ObjectExistence,
                         scoring::build_ecdf(std::vector<double>{0.5}, EvaluationMode::ObjectExistence));
    EXPECT_EQ(code_of([&] { run_trace(trace, partial, in); }), ErrorCode::Schema);
    EvaluationConfig cfg;
    cfg.modes = {EvaluationMode::ObjectExistence};
    cfg.gamma_fp = 1.0;
    EXPECT_EQ(code_of([&] { run_trace(trace, partial, in, cfg); }), ErrorCode::InvalidThreshold);
    cfg.gamma_fp.reset();
    EXPECT_NO_THROW(run_trace(trace, partial, in, cfg));
}

TEST(Report, RoundTrip) {
    EvaluationReport r;
    r.prompt = "a \"quoted\" prompt";
    r.video = VideoInfo{"v1", "p1", "gen"};
    r.window_size = 3;
    r.window_count = 4;
    r.gamma_fp = io::round12(0.3);
    ModeReport m;
    m.propositions.add({"dog_runs", "Dog runs"});
    m.specification = "(EVENTUALLY \"dog_runs\")";
    m.satisfaction_probability = io::round12(1.0 / 3.0);
    m.score = 0.25;
    r.modes.emplace(EvaluationMode::ObjectActionAlignment, m);
    r.final_score = 0.25;
    r.absent = {EvaluationMode::ObjectExistence};
    r.failures.push_back({EvaluationMode::ObjectExistence, "transport", "down"});
    r.warnings = {"1 trailing frame(s) did not fill a window and were dropped"};
    r.provenance = {"trace:x.json", "replay", "bundled-1", "0.1.0", "1970-01-01T00:00:00Z"};
    const auto text = io::dump_json(report_to_json(r));
    EXPECT_EQ(report_from_json(io::parse_json(text)), r);
    EXPECT_EQ(io::dump_json(report_to_json(report_from_json(io::parse_json(text)))), text);

    auto j = report_to_json(r);
    j["schema_version"] = 99;
    EXPECT_EQ(code_of([&] { report_from_json(j); }), ErrorCode::Schema);
    j = report_to_json(r);
    j.erase("modes");
    EXPECT_EQ(code_of([&] { report_from_json(j); }), ErrorCode::Schema);
}

TEST(Evaluate, BundledFixtureMatchesGolden) {
    const auto spec = puls::load_spec_file(kRoot / "data/fixtures/specs/nature_basic_snow.json");
    const auto profile = io::load_profile(kRoot / "data/profiles/bundled.json");
    auto client = perception::load_trace_client(kRoot / "data/fixtures/traces/nature_basic_snow__model_a.json");
    EvaluationConfig cfg;
    cfg.window_size = client->trace().window_size();
    cfg.tool_version = NEUSV_VERSION;
    cfg.timestamp = "1970-01-01T00:00:00Z";
    EvaluationInput in;
    in.prompt = spec.prompt;
    in.specs = spec.modes;
    in.windows = indexed_windows(client->trace().window_count());
    const auto first = io::dump_json(report_to_json(evaluate(cfg, profile, in, *client)));
    const auto second = io::dump_json(report_to_json(evaluate(cfg, profile, in, *client)));
    EXPECT_EQ(first, second);
    EXPECT_EQ(first, io::read_file(kRoot / "tests/golden/bundled_report.json"));
}

TEST(Benchmark, SuiteAndAnnotationParsing) {
    const auto suite = load_suite(kRoot / "data/suite/prompts.jsonl");
    EXPECT_EQ(suite.size(), 8u);
    std::set<std::string> themes;
    for (const auto& e : suite) themes.insert(e.theme);
    EXPECT_EQ(themes.size(), 4u);
    EXPECT_EQ(code_of([] { parse_suite("{\"id\":\"a\",\"theme\":\"t\",\"complexity\":\"basic\",\"prompt\":\"p\"}\n"
                                       "{\"id\":\"a\",\"theme\":\"t\",\"complexity\":\"basic\",\"prompt\":\"q\"}\n"); }),
              ErrorCode::Schema);
    EXPECT_EQ(code_of([] { parse_suite("{\"id\":\"a\"}\n"); }), ErrorCode::Schema);
    EXPECT_EQ(normalize_alignment_score(1), 0.0);
    EXPECT_EQ(normalize_alignment_score(5), 1.0);
    EXPECT_EQ(normalize_alignment_score(4), 0.75);
    EXPECT_EQ(code_of([] { normalize_alignment_score(0.5); }), ErrorCode::Domain);
}

namespace {

struct Synthetic {
    std::vector<SuiteEntry> suite;
    std::vector<EvaluationReport> reports;
};

Synthetic synthetic_reports() {
    Synthetic s;
    s.suite = {{"p1", "nature", "basic", "x"}, {"p2", "nature", "advanced", "x"},
               {"p3", "driving", "basic", "x"}, {"p4", "driving", "advanced", "x"},
               {"p5", "nature", "basic", "x"},  {"p6", "driving", "basic", "x"}};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* model : {"gen_a", "gen_b"}) {
        for (const auto& e : s.suite) {
            EvaluationReport r;
            r.video = VideoInfo{std::string(model) + "_" + e.id, e.id, model};
            ModeReport m;
            m.satisfaction_probability = io::round12(u(rng));
            m.score = io::round12(u(rng));
            r.modes.emplace(EvaluationMode::OverallConsistency, m);
            r.final_score = m.score;
            s.reports.push_back(r);
        }
    }
    return s;
}

} // namespace

TEST(Benchmark, SelfCorrelationIsOne) {
    const auto s = synthetic_reports();
    std::map<std::string, double> annotations;
    for (const auto& r : s.reports) annotations[r.video->video_id] = normalize_alignment_score(1.0 + 4.0 * r.final_score);
    const auto summary = benchmark(s.suite, s.reports, annotations);
    EXPECT_TRUE(summary.warnings.empty());
    EXPECT_EQ(summary.rows.size(), 12u);
    ASSERT_EQ(summary.groups.size(), 2u * (1 + 2 + 2));
    for (const auto& g : summary.groups) {
        ASSERT_TRUE(g.pearson_r) << g.model << " " << g.key << " " << g.pearson_error.value_or("");
        EXPECT_NEAR(*g.pearson_r, 1.0, 1e-12);
    }
    const auto& overall = summary.groups.front();
    EXPECT_EQ(overall.group, "overall");
    double sum = 0;
    for (const auto& r : s.reports) {
        if (r.video->model == overall.model) sum += r.final_score;
    }
    EXPECT_NEAR(overall.mean_score, sum / 6.0, 1e-12);
    EXPECT_EQ(overall.count, 6u);
}

TEST(Benchmark, ReversedRankingIsNegative) {
    const auto s = synthetic_reports();
    std::map<std::string, double> annotations;
    for (const auto& r : s.reports) annotations[r.video->video_id] = 1.0 - r.final_score;
    const auto summary = benchmark(s.suite, s.reports, annotations);
    for (const auto& g : summary.groups) {
        if (g.pearson_r) EXPECT_LT(*g.pearson_r, 0.0);
    }
    EXPECT_LT(*summary.groups.front().pearson_r, 0.0);
}

TEST(Benchmark, WarningsAndZeroVariance) {
    auto s = synthetic_reports();
    s.reports.erase(s.reports.begin());
    EvaluationReport stray;
    stray.video = VideoInfo{"stray", "nope", "gen_a"};
    s.reports.push_back(stray);
    s.reports.push_back(EvaluationReport{});
    std::map<std::string, double> annotations;
    for (const auto& r : s.reports) {
        if (r.video) annotations[r.video->video_id] = 0.5;
    }
    const auto summary = benchmark(s.suite, s.reports, annotations);
    EXPECT_EQ(summary.warnings.size(), 3u);
    for (const auto& g : summary.groups) {
        EXPECT_FALSE(g.pearson_r);
        ASSERT_TRUE(g.pearson_error);
    }
    EXPECT_EQ(summary.groups.front().pearson_error->rfind("zero_variance", 0), 0u);

    const auto rows = rows_csv(summary);
    EXPECT_EQ(rows.rfind("video_id,mode,satisfaction_probability,score,human_score\n", 0), 0u);
    const auto csv = summary_csv(summary);
    EXPECT_NE(csv.find("gen_b,overall,all,6,"), std::string::npos);
}
