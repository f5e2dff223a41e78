#include "neusv/error.hpp"

namespace neusv {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownAtom: return "unknown_atom";
    case ErrorCode::EmptyFormula: return "empty_formula";
    case ErrorCode::EmptyProposition: return "empty_proposition";
    case ErrorCode::WidthMismatch: return "width_mismatch";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::InvalidThreshold: return "invalid_threshold";
    case ErrorCode::EmptyTrace: return "empty_trace";
    case ErrorCode::Uncalibrated: return "uncalibrated";
    case ErrorCode::PropositionMismatch: return "proposition_mismatch";
    case ErrorCode::StateExplosion: return "state_explosion";
    case ErrorCode::InstanceTooLarge: return "instance_too_large";
    case ErrorCode::ResidualContainsAtom: return "residual_contains_atom";
    case ErrorCode::EmptyDistribution: return "empty_distribution";
    case ErrorCode::NoModes: return "no_modes";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::ZeroVariance: return "zero_variance";
    case ErrorCode::SingleClass: return "single_class";
    case ErrorCode::MalformedAnswer: return "malformed_answer";
    case ErrorCode::Transport: return "transport";
    case ErrorCode::ContextLimit: return "context_limit";
    case ErrorCode::Schema: return "schema";
    case ErrorCode::MissingKey: return "missing_key";
    case ErrorCode::UnparseableList: return "unparseable_list";
    case ErrorCode::TranslationFailed: return "translation_failed";
    case ErrorCode::TooFewFrames: return "too_few_frames";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

} // namespace neusv
