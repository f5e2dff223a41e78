#include <gtest/gtest.h>

#include <deque>
#include <filesystem>
#include <functional>

#include "neusv/error.hpp"
#include "neusv/io/files.hpp"
#include "neusv/puls/fewshot.hpp"
#include "neusv/puls/llm_client.hpp"
#include "neusv/puls/spec_file.hpp"
#include "neusv/puls/translate.hpp"
#include "neusv/tl/parser.hpp"

using namespace neusv;
using namespace neusv::puls;
using tl::Formula;
using tl::Op;

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

const std::filesystem::path kFewShotDir = std::filesystem::path(NEUSV_SOURCE_DIR) / "data" / "fewshot";

const FewShotLibrary& library() {
    static const FewShotLibrary lib = FewShotLibrary::load_directory(kFewShotDir);
    return lib;
}

// Replies from a fixed queue and keeps every request.
class ScriptedLlm final : public LlmClient {
public:
    explicit ScriptedLlm(std::deque<std::string> replies) : replies_(std::move(replies)) {}
    std::string generate(const std::vector<ChatMessage>& messages) override {
        requests.push_back(messages);
        if (replies_.empty()) throw Error(ErrorCode::Transport, "script exhausted");
        auto r = replies_.front();
        replies_.pop_front();
        return r;
    }
    std::string identity() const override { return "scripted"; }
    std::vector<std::vector<ChatMessage>> requests;

private:
    std::deque<std::string> replies_;
};

// Answers as a function of the request alone, so replies are reproducible.
class EchoLlm final : public LlmClient {
public:
    std::string fail_mode;
    int calls = 0;
    std::string generate(const std::vector<ChatMessage>& messages) override {
        ++calls;
        const auto& system = messages.front().text;
        if (!fail_mode.empty() && system.find("Mode: " + fail_mode + ".") != std::string::npos) {
            throw Error(ErrorCode::Transport, "backend unavailable");
        }
        const auto& last = messages.back().text;
        const auto at = last.find("Input Propositions: ");
        if (at == std::string::npos) return "Reasoning: short.\n\nOutput Propositions: [\"subject appears\", \"subject moves\"]";
        return "Reasoning: both.\n\nOutput Specification: \"subject appears\" UNTIL \"subject moves\"";
    }
    std::string identity() const override { return "echo"; }
};

tl::PropositionSet props_of(std::initializer_list<const char*> phrases) {
    tl::PropositionSet s;
    for (auto p : phrases) s.add(tl::normalize_proposition(p));
    return s;
}

} // namespace

TEST(FewShot, BundledStoresLoadForEveryModeAndStage) {
    for (auto stage : {Stage::TextToPropositions, Stage::TextToSpecification}) {
        for (auto mode : scoring::kAllModes) {
            ASSERT_TRUE(library().has(stage, mode));
            EXPECT_GE(library().get(stage, mode).examples.size(), 5u);
        }
    }
}

TEST(FewShot, RejectsSpecificationOverOtherAtoms) {
    const auto dir = std::filesystem::temp_directory_path() / "neusv_puls_fewshot";
    std::filesystem::create_directories(dir);
    const auto path = dir / "bad.json";
    io::write_file(path, R"({"system_template":"x","examples":[{"prompt":"p","propositions":["a","b"],"specification":"\"a\" U \"c\""}]})");
    EXPECT_EQ(code_of([&] { load_fewshot_store(path, Stage::TextToSpecification, EvaluationMode::ObjectExistence); }),
              ErrorCode::Schema);
    io::write_file(path, R"({"system_template":"x","examples":[{"prompt":"p","propositions":["a","b"],"specification":"G \"a\""}]})");
    EXPECT_EQ(code_of([&] { load_fewshot_store(path, Stage::TextToSpecification, EvaluationMode::ObjectExistence); }),
              ErrorCode::Schema);
    io::write_file(path, R"({"system_template":"x","examples":[{"prompt":"p","propositions":["a"]}]})");
    EXPECT_EQ(code_of([&] { load_fewshot_store(path, Stage::TextToSpecification, EvaluationMode::ObjectExistence); }),
              ErrorCode::Schema);
    EXPECT_NO_THROW(load_fewshot_store(path, Stage::TextToPropositions, EvaluationMode::ObjectExistence));
    std::filesystem::remove_all(dir);
    EXPECT_EQ(code_of([] { FewShotLibrary().get(Stage::TextToPropositions, EvaluationMode::ObjectExistence); }),
              ErrorCode::Schema);
}

TEST(Render, TurnsFollowTheStore) {
    const auto& store = library().get(Stage::TextToPropositions, EvaluationMode::OverallConsistency);
    const auto msgs = render_t2p_messages(store, "A kite rising");
    ASSERT_EQ(msgs.size(), 2 + 2 * store.examples.size());
    EXPECT_EQ(msgs.front().role, "system");
    EXPECT_EQ(msgs.front().text, store.system_template);
    EXPECT_EQ(msgs.back().text, "Input Prompt: A kite rising");
    EXPECT_EQ(msgs[2].role, "assistant");

    const auto& tstore = library().get(Stage::TextToSpecification, EvaluationMode::OverallConsistency);
    const auto tmsgs = render_t2tl_messages(tstore, "A kite rising", props_of({"kite rises"}));
    EXPECT_EQ(tmsgs.back().text, "Input Prompt: A kite rising\nInput Propositions: [\"kite rises\"]");
}

TEST(T2P, EiffelTowerPromptYieldsFivePropositions) {
    ScriptedLlm llm({"Reasoning: Not supplied for this particular example.\n\n"
                     "Output Propositions: ['There is a boat', 'The boat is sailing leisurely', "
                     "'The boat is along the Seine River', 'The Eiffel Tower is in the background', "
                     "'The view is zooming out']"});
    auto r = translate_t2p(llm, library(),
                           "A boat sailing leisurely along the Seine River with the Eiffel Tower in background, zoom out.",
                           EvaluationMode::OverallConsistency);
    ASSERT_EQ(r.propositions.size(), 5u);
    EXPECT_TRUE(r.propositions.contains("the_eiffel_tower_is_in_the_background"));
    EXPECT_EQ(r.propositions[3].display, "The Eiffel Tower is in the background");
    ASSERT_EQ(llm.requests.size(), 1u);
    EXPECT_NE(llm.requests[0].back().text.find("Seine River"), std::string::npos);
}

TEST(T2P, EchoedSingleItem) {
    ScriptedLlm llm({"[a]"});
    auto r = translate_t2p(llm, library(), "x", EvaluationMode::ObjectExistence);
    ASSERT_EQ(r.propositions.size(), 1u);
    EXPECT_EQ(r.propositions[0].id, "a");
}

TEST(T2P, TrailingProseAndDuplicates) {
    ScriptedLlm llm({"Sure. Output Propositions: [\"dog's ball\", `dog runs`, \xE2\x80\x9C" "Dog  runs\xE2\x80\x9D]\n"
                     "These cover the scene [mostly]. Let me know if you need more!"});
    auto r = translate_t2p(llm, library(), "x", EvaluationMode::ObjectActionAlignment);
    ASSERT_EQ(r.propositions.size(), 2u);
    EXPECT_EQ(r.propositions[0].id, "dog_s_ball");
}

TEST(T2P, ListExtractionRules) {
    EXPECT_EQ(extract_proposition_list("[\"a\", 'b c']"), (std::vector<std::string>{"a", "b c"}));
    EXPECT_EQ(extract_proposition_list("first [x] then [y, z] done"), (std::vector<std::string>{"y", "z"}));
    EXPECT_EQ(extract_proposition_list("['the dog's bone', 'cat']"),
              (std::vector<std::string>{"the dog's bone", "cat"}));
    EXPECT_EQ(extract_proposition_list("[\"a, b\", c]"), (std::vector<std::string>{"a, b", "c"}));
    EXPECT_EQ(extract_proposition_list("[a] and a broken [b"), (std::vector<std::string>{"a"}));
    EXPECT_EQ(code_of([] { extract_proposition_list("no list here"); }), ErrorCode::UnparseableList);
    ScriptedLlm empty({"[]"});
    EXPECT_EQ(code_of([&] { translate_t2p(empty, library(), "x", EvaluationMode::ObjectExistence); }),
              ErrorCode::EmptyProposition);
    ScriptedLlm punct({"['!!']"});
    EXPECT_EQ(code_of([&] { translate_t2p(punct, library(), "x", EvaluationMode::ObjectExistence); }),
              ErrorCode::EmptyProposition);
    ScriptedLlm none({"I cannot help"});
    EXPECT_EQ(code_of([&] { translate_t2p(none, library(), "x", EvaluationMode::ObjectExistence); }),
              ErrorCode::UnparseableList);
}

TEST(T2TL, BaseballGloveConjunction) {
    const auto props = props_of({"There is a baseball glove", "There is a tennis racket",
                                 "The baseball glove is on the right of the tennis racket", "The view is from the front"});
    ScriptedLlm llm({"Reasoning: Not supplied for this particular example.\n\nOutput Specification: (There is a baseball "
                     "glove AND There is a tennis racket AND The baseball glove is on the right of the tennis racket AND "
                     "The view is from the front)"});
    auto r = translate_t2tl(llm, library(), "A baseball glove on the right of a tennis racket, front view.", props,
                            EvaluationMode::OverallConsistency);
    auto expected = Formula::conj(
        Formula::conj(Formula::conj(Formula::atom(props[0].id), Formula::atom(props[1].id)), Formula::atom(props[2].id)),
        Formula::atom(props[3].id));
    EXPECT_EQ(r.formula, expected);
    EXPECT_EQ(tl::collect_atoms(r.formula).size(), 4u);
}

TEST(T2TL, DirectUntil) {
    ScriptedLlm llm({"\"a\" UNTIL \"b\""});
    auto r = translate_t2tl(llm, library(), "x", props_of({"a", "b"}), EvaluationMode::ObjectExistence);
    EXPECT_EQ(r.formula, Formula::until(Formula::atom("a"), Formula::atom("b")));
}

TEST(T2TL, SnowRowUntil) {
    ScriptedLlm llm({"```\n(\"snow_falls\" U \"ground_is_covered\")\n```"});
    auto r = translate_t2tl(llm, library(), "Snow falling until it covers the ground",
                            props_of({"snow falls", "ground is covered"}), EvaluationMode::ObjectActionAlignment);
    EXPECT_EQ(r.formula, Formula::until(Formula::atom("snow_falls"), Formula::atom("ground_is_covered")));
}

TEST(T2TL, SpecificationExtraction) {
    EXPECT_EQ(extract_specification("Reasoning: a AND b.\nOutput Specification: G \"a\"\nThanks"), "G \"a\"");
    EXPECT_EQ(extract_specification("Here it is:\n\"a\" U \"b\"\nHope that helps."), "\"a\" U \"b\"");
    EXPECT_EQ(extract_specification("\"a\""), "\"a\"");
}

TEST(T2TL, CorrectiveRetry) {
    ScriptedLlm llm({"I think (\"a\" UNTIL", "Output Specification: EVENTUALLY \"b\""});
    auto r = translate_t2tl(llm, library(), "x", props_of({"a", "b"}), EvaluationMode::ObjectExistence);
    EXPECT_EQ(r.formula, Formula::eventually(Formula::atom("b")));
    ASSERT_EQ(llm.requests.size(), 2u);
    EXPECT_EQ(llm.requests[1].size(), llm.requests[0].size() + 2);
    EXPECT_EQ(r.raw_outputs.size(), 2u);

    ScriptedLlm bad({"(((", ")))"});
    EXPECT_EQ(code_of([&] { translate_t2tl(bad, library(), "x", props_of({"a"}), EvaluationMode::ObjectExistence); }),
              ErrorCode::TranslationFailed);
    ScriptedLlm unknown({"\"zebra\"", "G \"zebra\""});
    EXPECT_EQ(code_of([&] { translate_t2tl(unknown, library(), "x", props_of({"a"}), EvaluationMode::ObjectExistence); }),
              ErrorCode::UnknownAtom);
}

TEST(TranslateAll, RunningExampleOverallConsistency) {
    ScriptedLlm llm({"Output Propositions: [car driving, clear day, cyclist signals turn, cyclist turns, cyclist avoids obstacle]",
                     "Output Specification: ALWAYS ((car driving AND clear day) AND (cyclist signals turn) -> "
                     "EVENTUALLY (cyclist turns AND cyclist avoids obstacle))"});
    const std::array modes{EvaluationMode::OverallConsistency};
    auto t = translate_all_modes(llm, library(), "A car drives on a clear day while a cyclist signals, turns and avoids an obstacle",
                                 modes);
    ASSERT_TRUE(t.failures.empty());
    const auto& spec = t.specs.at(EvaluationMode::OverallConsistency);
    const auto a = [](const char* id) { return Formula::atom(id); };
    auto expected = Formula::always(
        Formula::implies(Formula::conj(Formula::conj(a("car_driving"), a("clear_day")), a("cyclist_signals_turn")),
                         Formula::eventually(Formula::conj(a("cyclist_turns"), a("cyclist_avoids_obstacle")))));
    EXPECT_EQ(spec.formula, expected);
    EXPECT_EQ(spec.propositions.size(), 5u);
    EXPECT_EQ(spec.llm_outputs.size(), 2u);
}

TEST(TranslateAll, DeterministicClientGivesFourSpecs) {
    EchoLlm llm;
    auto t1 = translate_all_modes(llm, library(), "A subject appears and then moves");
    auto t2 = translate_all_modes(llm, library(), "A subject appears and then moves");
    ASSERT_EQ(t1.specs.size(), 4u);
    EXPECT_TRUE(t1.failures.empty());
    EXPECT_EQ(t1.specs, t2.specs);
    SpecFile f1{"A subject appears and then moves", t1.specs}, f2{"A subject appears and then moves", t2.specs};
    EXPECT_EQ(io::dump_json(spec_to_json(f1)), io::dump_json(spec_to_json(f2)));
    for (const auto& [mode, s] : t1.specs) {
        for (const auto& p : tl::collect_atoms(s.formula)) EXPECT_TRUE(s.propositions.contains(p.id));
    }
}

TEST(TranslateAll, OneFailingModeIsRecorded) {
    EchoLlm llm;
    llm.fail_mode = "spatial relationship";
    auto t = translate_all_modes(llm, library(), "x");
    EXPECT_EQ(t.specs.size(), 3u);
    ASSERT_EQ(t.failures.size(), 1u);
    EXPECT_EQ(t.failures[0].mode, EvaluationMode::SpatialRelationship);
    EXPECT_EQ(t.failures[0].code, ErrorCode::Transport);
    EXPECT_FALSE(t.specs.contains(EvaluationMode::SpatialRelationship));

    ScriptedLlm dead({});
    EXPECT_EQ(code_of([&] { translate_all_modes(dead, library(), "x"); }), ErrorCode::TranslationFailed);
}

TEST(Replay, RecordThenReplayIsByteIdentical) {
    auto upstream = std::make_shared<EchoLlm>();
    ReplayLlmClient recorder({}, upstream);
    const auto recorded = translate_all_modes(recorder, library(), "A subject appears and then moves");
    const auto path = std::filesystem::temp_directory_path() / "neusv_puls_replay.json";
    recorder.save(path);

    auto replay = ReplayLlmClient::load(path);
    EXPECT_EQ(replay->identity(), "replay");
    const auto replayed = translate_all_modes(*replay, library(), "A subject appears and then moves");
    EXPECT_EQ(io::dump_json(spec_to_json({"p", recorded.specs})), io::dump_json(spec_to_json({"p", replayed.specs})));
    EXPECT_EQ(upstream->calls, 8);
    EXPECT_EQ(code_of([&] { replay->generate({{"user", "never seen", {}}}); }), ErrorCode::MissingKey);
    std::filesystem::remove(path);
}

TEST(Replay, KeyDependsOnEveryField) {
    const std::vector<ChatMessage> base{{"user", "hello", {}}};
    EXPECT_EQ(request_key(base).size(), 16u);
    EXPECT_EQ(request_key(base), request_key(base));
    EXPECT_NE(request_key(base), request_key({{"system", "hello", {}}}));
    EXPECT_NE(request_key(base), request_key({{"user", "hello", {"data:image/png;base64,AA=="}}}));
    EXPECT_NE(request_key({{"user", "ab", {}}, {"user", "c", {}}}), request_key({{"user", "a", {}}, {"user", "bc", {}}}));
}

TEST(SpecFile, RoundTrip) {
    SpecFile spec;
    spec.prompt = "Snow falling until it covers the ground";
    ModeSpec ms;
    ms.mode = EvaluationMode::ObjectActionAlignment;
    ms.propositions = props_of({"snow falls", "ground is covered"});
    ms.formula = tl::parse_formula("\"snow falls\" U \"ground is covered\"", ms.propositions);
    ms.llm_outputs = {"raw"};
    spec.modes.emplace(ms.mode, ms);
    const auto path = std::filesystem::temp_directory_path() / "neusv_spec_roundtrip.json";
    save_spec_file(path, spec);
    EXPECT_EQ(load_spec_file(path), spec);
    std::filesystem::remove(path);

    EXPECT_EQ(code_of([] {
                  spec_from_json(io::parse_json(
                      R"({"prompt":"p","modes":{"object_existence":{"propositions":[{"id":"a","display":"a"}],"formula":"\"b\""}}})"));
              }),
              ErrorCode::UnknownAtom);
    EXPECT_EQ(code_of([] {
                  spec_from_json(io::parse_json(
                      R"({"prompt":"p","modes":{"vibes":{"propositions":[{"id":"a","display":"a"}],"formula":"\"a\""}}})"));
              }),
              ErrorCode::Schema);
    EXPECT_EQ(code_of([] { spec_from_json(io::parse_json(R"({"prompt":"p","modes":{}})")); }), ErrorCode::Schema);
}
