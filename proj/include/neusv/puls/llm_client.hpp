#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "neusv/transport/chat.hpp"

namespace neusv::puls {

using transport::ChatMessage;

/// Text-generation backend for prompt translation.
class LlmClient {
public:
    virtual ~LlmClient() = default;
    virtual std::string generate(const std::vector<ChatMessage>& messages) = 0;
    virtual std::string identity() const = 0;
};

struct ChatLlmConfig {
    std::string model;
    double temperature = 0.0;
    int max_tokens = 1024;
    transport::RetryPolicy retry;
};

/// LlmClient over a chat-completions transport.
class ChatLlmClient final : public LlmClient {
public:
    ChatLlmClient(std::shared_ptr<transport::ChatTransport> transport, ChatLlmConfig config);
    std::string generate(const std::vector<ChatMessage>& messages) override;
    std::string identity() const override { return "chat:" + config_.model; }

private:
    std::shared_ptr<transport::ChatTransport> transport_;
    ChatLlmConfig config_;
};

/// Stable 16-hex-digit key of a message list.
std::string request_key(const std::vector<ChatMessage>& messages);

/// Answers from a recording keyed by request_key. With an upstream client,
/// misses are forwarded and recorded; without one they raise
/// ErrorCode::MissingKey. The recording is JSON {key: response}.
class ReplayLlmClient final : public LlmClient {
public:
    explicit ReplayLlmClient(std::map<std::string, std::string> recording,
                             std::shared_ptr<LlmClient> upstream = nullptr);
    static std::unique_ptr<ReplayLlmClient> load(const std::filesystem::path& path,
                                                 std::shared_ptr<LlmClient> upstream = nullptr);

    std::string generate(const std::vector<ChatMessage>& messages) override;
    std::string identity() const override;

    std::map<std::string, std::string> recording() const;
    void save(const std::filesystem::path& path) const;

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::string> recording_;
    std::shared_ptr<LlmClient> upstream_;
};

} // namespace neusv::puls
