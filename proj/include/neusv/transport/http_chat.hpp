#pragma once

#include <chrono>
#include <string>

#include "neusv/transport/chat.hpp"

namespace neusv::transport {

struct HttpChatConfig {
    /// Base URL up to the API version, e.g. "https://api.openai.com/v1".
    std::string endpoint;
    /// Sent as a bearer token when non-empty.
    std::string api_key;
    std::chrono::seconds timeout{60};
};

/// OpenAI-style `POST <endpoint>/chat/completions` client. Thread-safe:
/// every call opens its own connection.
class HttpChatTransport final : public ChatTransport {
public:
    explicit HttpChatTransport(HttpChatConfig config);
    ChatResponse complete(const ChatRequest& request) override;

private:
    HttpChatConfig config_;
    std::string origin_;
    std::string path_;
};

/// Request body as sent on the wire.
std::string chat_request_body(const ChatRequest& request);

/// Parses a chat-completions response body. Throws ErrorCode::Transport
/// when the body is not a usable completion.
ChatResponse parse_chat_response(const std::string& body);

/// "data:<mime>;base64,<payload>" for an image file, mime by extension.
std::string image_data_url(const std::string& path);

} // namespace neusv::transport
