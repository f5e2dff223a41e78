#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neusv/scoring/evaluation_mode.hpp"

namespace neusv::puls {

using scoring::EvaluationMode;

enum class Stage { TextToPropositions, TextToSpecification };

std::string_view to_string(Stage s) noexcept;

struct FewShotExample {
    std::string prompt;
    /// Display phrases.
    std::vector<std::string> propositions;
    /// Present for specification examples only.
    std::optional<std::string> specification;
    std::optional<std::string> reasoning;
};

struct FewShotStore {
    Stage stage = Stage::TextToPropositions;
    EvaluationMode mode = EvaluationMode::OverallConsistency;
    std::string system_template;
    std::vector<FewShotExample> examples;
};

/// Reads {system_template, examples:[{prompt, propositions, specification?,
/// reasoning?}]} and checks it: every specification must parse over exactly
/// the example's propositions. Throws ErrorCode::Schema naming the example.
FewShotStore load_fewshot_store(const std::filesystem::path& path, Stage stage, EvaluationMode mode);

/// All stores under a root laid out as t2p/<mode>.json and t2tl/<mode>.json.
class FewShotLibrary {
public:
    FewShotLibrary() = default;
    /// Loads whichever of the eight files exist.
    static FewShotLibrary load_directory(const std::filesystem::path& root);

    void add(FewShotStore store);
    bool has(Stage stage, EvaluationMode mode) const;
    /// Throws ErrorCode::Schema when the store is absent.
    const FewShotStore& get(Stage stage, EvaluationMode mode) const;

private:
    std::map<std::pair<Stage, EvaluationMode>, FewShotStore> stores_;
};

} // namespace neusv::puls
