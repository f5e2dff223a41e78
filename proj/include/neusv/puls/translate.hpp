#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "neusv/error.hpp"
#include "neusv/puls/fewshot.hpp"
#include "neusv/puls/llm_client.hpp"
#include "neusv/tl/formula.hpp"
#include "neusv/tl/proposition.hpp"

namespace neusv::puls {

struct ModeSpec {
    EvaluationMode mode = EvaluationMode::OverallConsistency;
    tl::PropositionSet propositions;
    tl::Formula formula;
    /// Raw model outputs in request order, kept for auditing.
    std::vector<std::string> llm_outputs;

    friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

struct ModeFailure {
    EvaluationMode mode;
    ErrorCode code;
    std::string message;
};

struct Translation {
    std::map<EvaluationMode, ModeSpec> specs;
    std::vector<ModeFailure> failures;
};

std::vector<ChatMessage> render_t2p_messages(const FewShotStore& store, const std::string& prompt);
std::vector<ChatMessage> render_t2tl_messages(const FewShotStore& store, const std::string& prompt,
                                              const tl::PropositionSet& props);

/// Items of the first bracketed list after the last "Output Propositions:"
/// label, or of the last bracketed list when there is no label. Outer quotes
/// are removed. Throws ErrorCode::UnparseableList when there is no list.
std::vector<std::string> extract_proposition_list(const std::string& output);

/// The specification line of a model reply: the text after an
/// "Output Specification:" label if present, else the last line holding a
/// temporal-logic operator, else the last non-empty line.
std::string extract_specification(const std::string& output);

struct PropositionResult {
    tl::PropositionSet propositions;
    std::string raw_output;
};

/// Throws ErrorCode::UnparseableList, ErrorCode::EmptyProposition or
/// ErrorCode::Transport.
PropositionResult translate_t2p(LlmClient& llm, const FewShotLibrary& library, const std::string& prompt,
                                EvaluationMode mode);

struct SpecificationResult {
    tl::Formula formula;
    std::vector<std::string> raw_outputs;
};

/// One corrective retry on failure. Afterwards throws
/// ErrorCode::TranslationFailed, or ErrorCode::UnknownAtom when the reply
/// kept naming propositions outside `props`.
SpecificationResult translate_t2tl(LlmClient& llm, const FewShotLibrary& library, const std::string& prompt,
                                   const tl::PropositionSet& props, EvaluationMode mode);

/// Both stages for every requested mode, in mode order. Failed modes are
/// reported, not invented. Throws ErrorCode::TranslationFailed only when
/// every mode fails.
Translation translate_all_modes(LlmClient& llm, const FewShotLibrary& library, const std::string& prompt,
                                std::span<const EvaluationMode> modes = scoring::kAllModes);

} // namespace neusv::puls
