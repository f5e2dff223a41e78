#pragma once

#include <memory>
#include <string>

#include "neusv/perception/client.hpp"
#include "neusv/transport/chat.hpp"

namespace neusv::perception {

struct VlmConfig {
    std::string model;
    /// `{proposition}` is replaced by the proposition's display phrase.
    std::string question_template =
        "Is {proposition} present in these frames? Reply with exactly one word, Yes or No.";
    std::size_t context_limit = 3;
    int max_tokens = 4;
    int top_logprobs = 5;
    transport::RetryPolicy retry;
};

/// Asks a vision-language model a Yes/No question per proposition and
/// turns the answer token probabilities into a confidence.
class VlmClient final : public PerceptionClient {
public:
    VlmClient(std::shared_ptr<transport::ChatTransport> transport, VlmConfig config);

    /// Throws ErrorCode::ContextLimit for empty or oversized windows,
    /// ErrorCode::MalformedAnswer and ErrorCode::Transport.
    double confidence(const tl::Proposition& p, const FrameWindow& window) override;
    ClientIdentity identity() const override { return {"vlm", config_.model}; }

    /// Request for one query, frames oldest first.
    transport::ChatRequest build_request(const tl::Proposition& p, const FrameWindow& window) const;

private:
    std::shared_ptr<transport::ChatTransport> transport_;
    VlmConfig config_;
};

} // namespace neusv::perception
