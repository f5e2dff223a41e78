#include "neusv/puls/llm_client.hpp"

#include <cstdio>

#include "neusv/error.hpp"
#include "neusv/io/files.hpp"

namespace neusv::puls {

ChatLlmClient::ChatLlmClient(std::shared_ptr<transport::ChatTransport> transport, ChatLlmConfig config)
    : transport_(std::move(transport)), config_(std::move(config)) {
    if (!transport_) throw Error(ErrorCode::Schema, "LLM client needs a transport");
}

std::string ChatLlmClient::generate(const std::vector<ChatMessage>& messages) {
    transport::ChatRequest req;
    req.model = config_.model;
    req.messages = messages;
    req.temperature = config_.temperature;
    req.max_tokens = config_.max_tokens;
    return transport::complete_with_retry(*transport_, req, config_.retry).text;
}

std::string request_key(const std::vector<ChatMessage>& messages) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& m : messages) {
        mix(m.role);
        mix("\x1f");
        mix(m.text);
        for (const auto& img : m.images) {
            mix("\x1d");
            mix(img);
        }
        mix("\x1e");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ReplayLlmClient::ReplayLlmClient(std::map<std::string, std::string> recording, std::shared_ptr<LlmClient> upstream)
    : recording_(std::move(recording)), upstream_(std::move(upstream)) {}

std::unique_ptr<ReplayLlmClient> ReplayLlmClient::load(const std::filesystem::path& path,
                                                       std::shared_ptr<LlmClient> upstream) {
    std::map<std::string, std::string> rec;
    if (std::filesystem::exists(path) || !upstream) {
        const auto j = io::read_json_file(path);
        if (!j.is_object()) throw Error(ErrorCode::Schema, path.string() + ": recording must be a JSON object");
        for (const auto& [k, v] : j.items()) {
            if (!v.is_string()) throw Error(ErrorCode::Schema, path.string() + ": recorded responses must be strings");
            rec.emplace(k, v.get<std::string>());
        }
    }
    return std::make_unique<ReplayLlmClient>(std::move(rec), std::move(upstream));
}

std::string ReplayLlmClient::generate(const std::vector<ChatMessage>& messages) {
    const auto key = request_key(messages);
    {
        std::lock_guard lock(mutex_);
        if (auto it = recording_.find(key); it != recording_.end()) return it->second;
    }
    if (!upstream_) throw Error(ErrorCode::MissingKey, "no recorded response for request " + key);
    auto text = upstream_->generate(messages);
    std::lock_guard lock(mutex_);
    recording_.emplace(key, text);
    return text;
}

std::string ReplayLlmClient::identity() const {
    return upstream_ ? "record:" + upstream_->identity() : std::string("replay");
}

std::map<std::string, std::string> ReplayLlmClient::recording() const {
    std::lock_guard lock(mutex_);
    return recording_;
}

void ReplayLlmClient::save(const std::filesystem::path& path) const {
    io::Json j = io::Json::object();
    for (const auto& [k, v] : recording()) j[k] = v;
    io::write_file(path, io::dump_json(j));
}

} // namespace neusv::puls
