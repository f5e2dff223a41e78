#include "neusv/perception/vlm_client.hpp"

#include "neusv/error.hpp"
#include "neusv/perception/token_score.hpp"
#include "neusv/transport/http_chat.hpp"

namespace neusv::perception {

VlmClient::VlmClient(std::shared_ptr<transport::ChatTransport> transport, VlmConfig config)
    : transport_(std::move(transport)), config_(std::move(config)) {
    if (!transport_) throw Error(ErrorCode::Schema, "VLM client needs a transport");
    if (config_.context_limit == 0) throw Error(ErrorCode::ContextLimit, "context limit must be at least 1");
}

transport::ChatRequest VlmClient::build_request(const tl::Proposition& p, const FrameWindow& window) const {
    if (window.frames.empty() || window.frames.size() > config_.context_limit) {
        throw Error(ErrorCode::ContextLimit, "window " + std::to_string(window.index) + " has " +
                                                 std::to_string(window.frames.size()) + " frames, limit is " +
                                                 std::to_string(config_.context_limit));
    }
    std::string question = config_.question_template;
    const std::string slot = "{proposition}";
    for (auto pos = question.find(slot); pos != std::string::npos; pos = question.find(slot, pos + p.display.size())) {
        question.replace(pos, slot.size(), p.display);
    }
    transport::ChatMessage msg{"user", std::move(question), {}};
    for (const auto& f : window.frames) msg.images.push_back(transport::image_data_url(f.string()));
    transport::ChatRequest req;
    req.model = config_.model;
    req.messages.push_back(std::move(msg));
    req.temperature = 0.0;
    req.max_tokens = config_.max_tokens;
    req.top_logprobs = config_.top_logprobs;
    return req;
}

double VlmClient::confidence(const tl::Proposition& p, const FrameWindow& window) {
    const auto response = transport::complete_with_retry(*transport_, build_request(p, window), config_.retry);
    try {
        return answer_confidence(response.tokens);
    } catch (const Error& e) {
        throw Error(e.code(), "proposition '" + p.id + "', window " + std::to_string(window.index) + ": " + e.what());
    }
}

} // namespace neusv::perception
