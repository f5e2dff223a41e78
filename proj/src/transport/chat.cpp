#include "neusv/transport/chat.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "neusv/error.hpp"

namespace neusv::transport {

ChatResponse complete_with_retry(ChatTransport& transport, const ChatRequest& request, const RetryPolicy& policy) {
    auto delay = policy.initial_backoff;
    const int attempts = std::max(1, policy.max_attempts);
    for (int attempt = 1;; ++attempt) {
        try {
            return transport.complete(request);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Transport || attempt >= attempts) {
                if (e.code() == ErrorCode::Transport) {
                    throw Error(ErrorCode::Transport,
                                std::string(e.what()) + " (gave up after " + std::to_string(attempts) + " attempts)");
                }
                throw;
            }
        }
        if (policy.sleep) policy.sleep(delay);
        else std::this_thread::sleep_for(delay);
        delay *= 2;
    }
}

} // namespace neusv::transport
