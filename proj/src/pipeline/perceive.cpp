#include "neusv/pipeline/perceive.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "neusv/error.hpp"

namespace neusv::pipeline {

automaton::ConfidenceTrace perceive_trace(perception::PerceptionClient& client, const tl::PropositionSet& props,
                                          std::span<const perception::FrameWindow> windows, std::size_t window_size,
                                          std::size_t parallelism) {
    if (windows.empty()) throw Error(ErrorCode::EmptyTrace, "no windows to perceive");
    if (props.empty()) throw Error(ErrorCode::EmptyProposition, "no propositions to perceive");
    const std::size_t width = props.size();
    const std::size_t total = windows.size() * width;
    std::vector<double> values(total, 0.0);

    // Slots below the first failure always run, so the reported failure is
    // the lowest failing slot whatever the scheduling.
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed_at{total};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= total || k > failed_at.load()) return;
            const std::size_t j = k / width, i = k % width;
            try {
                values[k] = client.confidence(props[i], windows[j]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (k < failed_at) {
                    failed_at = k;
                    failure = std::current_exception();
                }
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(total, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    if (failure) {
        const std::string where = "window " + std::to_string(windows[failed_at / width].index) + ", proposition '" +
                                  props[failed_at % width].id + "': ";
        try {
            std::rethrow_exception(failure);
        } catch (const Error& e) {
            throw Error(e.code(), where + e.what());
        }
    }

    std::vector<std::vector<double>> rows(windows.size());
    for (std::size_t j = 0; j < windows.size(); ++j) {
        rows[j].assign(values.begin() + static_cast<std::ptrdiff_t>(j * width),
                       values.begin() + static_cast<std::ptrdiff_t>((j + 1) * width));
    }
    return automaton::ConfidenceTrace(props, window_size, std::move(rows), false);
}

} // namespace neusv::pipeline
