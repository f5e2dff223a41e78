#include "neusv/puls/fewshot.hpp"

#include <set>

#include "neusv/error.hpp"
#include "neusv/io/files.hpp"
#include "neusv/tl/parser.hpp"

namespace neusv::puls {

std::string_view to_string(Stage s) noexcept {
    return s == Stage::TextToPropositions ? "t2p" : "t2tl";
}

namespace {

std::optional<std::string> optional_string(const io::Json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw Error(ErrorCode::Schema, ctx + ": '" + key + "' must be a string");
    return it->get<std::string>();
}

void check_example(const FewShotExample& ex, Stage stage, const std::string& ctx) {
    if (ex.propositions.empty()) throw Error(ErrorCode::Schema, ctx + ": no propositions");
    tl::PropositionSet props;
    for (const auto& phrase : ex.propositions) {
        try {
            props.add(tl::normalize_proposition(phrase));
        } catch (const Error& e) {
            throw Error(ErrorCode::Schema, ctx + ": " + e.what());
        }
    }
    if (stage == Stage::TextToPropositions) return;
    if (!ex.specification) throw Error(ErrorCode::Schema, ctx + ": specification example without a specification");
    tl::Formula f;
    try {
        f = tl::parse_formula(*ex.specification, props);
    } catch (const Error& e) {
        throw Error(ErrorCode::Schema, ctx + ": specification does not parse: " + e.what());
    }
    std::set<std::string> used, listed;
    for (const auto& p : tl::collect_atoms(f)) used.insert(p.id);
    for (const auto& p : props) listed.insert(p.id);
    if (used != listed) throw Error(ErrorCode::Schema, ctx + ": specification atoms differ from the propositions");
}

} // namespace

FewShotStore load_fewshot_store(const std::filesystem::path& path, Stage stage, EvaluationMode mode) {
    const auto j = io::read_json_file(path);
    const std::string ctx = path.string();
    FewShotStore store;
    store.stage = stage;
    store.mode = mode;
    store.system_template = io::require_string(j, "system_template", ctx);
    const auto& examples = io::require(j, "examples", ctx);
    if (!examples.is_array()) throw Error(ErrorCode::Schema, ctx + ": 'examples' must be an array");
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const std::string ectx = ctx + " example " + std::to_string(i);
        const auto& e = examples[i];
        FewShotExample ex;
        ex.prompt = io::require_string(e, "prompt", ectx);
        const auto& props = io::require(e, "propositions", ectx);
        if (!props.is_array()) throw Error(ErrorCode::Schema, ectx + ": 'propositions' must be an array");
        for (const auto& p : props) {
            if (!p.is_string()) throw Error(ErrorCode::Schema, ectx + ": propositions must be strings");
            ex.propositions.push_back(p.get<std::string>());
        }
        ex.specification = optional_string(e, "specification", ectx);
        ex.reasoning = optional_string(e, "reasoning", ectx);
        check_example(ex, stage, ectx);
        store.examples.push_back(std::move(ex));
    }
    return store;
}

FewShotLibrary FewShotLibrary::load_directory(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root)) {
        throw Error(ErrorCode::Io, "few-shot directory '" + root.string() + "' does not exist");
    }
    FewShotLibrary lib;
    for (auto stage : {Stage::TextToPropositions, Stage::TextToSpecification}) {
        for (auto mode : scoring::kAllModes) {
            const auto path = root / std::string(to_string(stage)) / (std::string(scoring::to_string(mode)) + ".json");
            if (std::filesystem::exists(path)) lib.add(load_fewshot_store(path, stage, mode));
        }
    }
    return lib;
}

void FewShotLibrary::add(FewShotStore store) {
    const auto key = std::make_pair(store.stage, store.mode);
    stores_.insert_or_assign(key, std::move(store));
}

bool FewShotLibrary::has(Stage stage, EvaluationMode mode) const { return stores_.contains({stage, mode}); }

const FewShotStore& FewShotLibrary::get(Stage stage, EvaluationMode mode) const {
    auto it = stores_.find({stage, mode});
    if (it == stores_.end()) {
        throw Error(ErrorCode::Schema, "no " + std::string(to_string(stage)) + " few-shot store for mode " +
                                           std::string(scoring::to_string(mode)));
    }
    return it->second;
}

} // namespace neusv::puls
