#pragma once

#include <span>

#include "neusv/transport/chat.hpp"

namespace neusv::perception {

using transport::TokenScore;

/// log(softmax(logits)[index]), computed stably.
double log_softmax(std::span<const double> logits, std::size_t index);

enum class Answer { Yes, No };

/// Reads the answer from the concatenated tokens, ignoring whitespace,
/// trailing punctuation, case and special markers such as "<|eot_id|>".
/// Yes/True and No/False are accepted. Throws ErrorCode::MalformedAnswer.
Answer parse_answer(std::span<const TokenScore> tokens);

/// Product of token probabilities for Yes; one minus it for No.
double answer_confidence(std::span<const TokenScore> tokens);

} // namespace neusv::perception
