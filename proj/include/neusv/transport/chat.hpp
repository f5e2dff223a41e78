#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace neusv::transport {

/// One generated token with its log-probability and the top alternatives
/// the server reported for the same position.
struct TokenScore {
    std::string token;
    double logprob = 0.0;
    std::vector<std::pair<std::string, double>> alternatives;
};

struct ChatMessage {
    std::string role;
    std::string text;
    /// data: URLs, sent after the text in order.
    std::vector<std::string> images;
};

struct ChatRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 512;
    /// 0 disables log-probabilities.
    int top_logprobs = 0;
};

struct ChatResponse {
    std::string text;
    std::vector<TokenScore> tokens;
};

/// Anything that can answer a chat-completions request.
class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    /// Throws ErrorCode::Transport on delivery or server failure.
    virtual ChatResponse complete(const ChatRequest& request) = 0;
};

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{500};
    /// Injected so tests do not sleep.
    std::function<void(std::chrono::milliseconds)> sleep;
};

/// Calls `transport.complete`, retrying transport failures with doubling
/// backoff. Other errors propagate at once.
ChatResponse complete_with_retry(ChatTransport& transport, const ChatRequest& request, const RetryPolicy& policy);

} // namespace neusv::transport
