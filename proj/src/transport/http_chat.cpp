#include "neusv/transport/http_chat.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "neusv/error.hpp"

namespace neusv::transport {

using Json = nlohmann::json;

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

HttpChatTransport::HttpChatTransport(HttpChatConfig config) : config_(std::move(config)) {
    const auto scheme = config_.endpoint.find("://");
    if (scheme == std::string::npos) {
        throw Error(ErrorCode::Schema, "endpoint '" + config_.endpoint + "' must start with http:// or https://");
    }
    const auto slash = config_.endpoint.find('/', scheme + 3);
    origin_ = config_.endpoint.substr(0, slash);
    path_ = slash == std::string::npos ? std::string() : config_.endpoint.substr(slash);
    while (!path_.empty() && path_.back() == '/') path_.pop_back();
    path_ += "/chat/completions";
}

std::string chat_request_body(const ChatRequest& request) {
    Json messages = Json::array();
    for (const auto& m : request.messages) {
        Json msg{{"role", m.role}};
        if (m.images.empty()) {
            msg["content"] = m.text;
        } else {
            Json parts = Json::array();
            parts.push_back({{"type", "text"}, {"text", m.text}});
            for (const auto& url : m.images) parts.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
            msg["content"] = std::move(parts);
        }
        messages.push_back(std::move(msg));
    }
    Json body{{"model", request.model},
              {"messages", std::move(messages)},
              {"temperature", request.temperature},
              {"max_tokens", request.max_tokens}};
    if (request.top_logprobs > 0) {
        body["logprobs"] = true;
        body["top_logprobs"] = request.top_logprobs;
    }
    return body.dump();
}

ChatResponse parse_chat_response(const std::string& body) {
    Json j;
    try {
        j = Json::parse(body);
    } catch (const Json::parse_error&) {
        throw Error(ErrorCode::Transport, "server returned a non-JSON body");
    }
    if (j.contains("error")) {
        const auto& err = j["error"];
        const std::string msg = err.is_object() ? err.value("message", err.dump()) : err.dump();
        throw Error(ErrorCode::Transport, "server error: " + msg);
    }
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
        throw Error(ErrorCode::Transport, "response has no choices");
    }
    const auto& choice = j["choices"][0];
    ChatResponse out;
    if (choice.contains("message") && choice["message"].contains("content") && choice["message"]["content"].is_string()) {
        out.text = choice["message"]["content"].get<std::string>();
    }
    if (choice.contains("logprobs") && choice["logprobs"].is_object() && choice["logprobs"].contains("content") &&
        choice["logprobs"]["content"].is_array()) {
        for (const auto& t : choice["logprobs"]["content"]) {
            TokenScore ts;
            ts.token = t.value("token", "");
            ts.logprob = t.value("logprob", 0.0);
            if (t.contains("top_logprobs") && t["top_logprobs"].is_array()) {
                for (const auto& alt : t["top_logprobs"]) {
                    ts.alternatives.emplace_back(alt.value("token", ""), alt.value("logprob", 0.0));
                }
            }
            out.tokens.push_back(std::move(ts));
        }
    }
    return out;
}

ChatResponse HttpChatTransport::complete(const ChatRequest& request) {
    httplib::Client client(origin_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
    auto res = client.Post(path_, headers, chat_request_body(request), "application/json");
    if (!res) {
        throw Error(ErrorCode::Transport, "request to " + origin_ + path_ + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::Transport, "HTTP " + std::to_string(res->status) + " from " + origin_ + path_ + ": " +
                                              res->body.substr(0, 300));
    }
    return parse_chat_response(res->body);
}

std::string image_data_url(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read frame '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto ext = lower(std::filesystem::path(path).extension().string());
    std::string mime = "application/octet-stream";
    if (ext == ".png") mime = "image/png";
    else if (ext == ".jpg" || ext == ".jpeg") mime = "image/jpeg";
    else if (ext == ".webp") mime = "image/webp";
    else if (ext == ".gif") mime = "image/gif";
    else if (ext == ".bmp") mime = "image/bmp";
    return "data:" + mime + ";base64," + httplib::detail::base64_encode(ss.str());
}

} // namespace neusv::transport
