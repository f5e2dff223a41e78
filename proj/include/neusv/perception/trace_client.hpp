#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "neusv/automaton/confidence_trace.hpp"
#include "neusv/perception/client.hpp"

namespace neusv::perception {

/// Serves confidences stored in a trace; frame paths are ignored.
class TraceClient final : public PerceptionClient {
public:
    TraceClient(automaton::ConfidenceTrace trace, std::string source);

    /// Throws ErrorCode::MissingKey for unknown propositions or windows.
    double confidence(const tl::Proposition& p, const FrameWindow& window) override;
    ClientIdentity identity() const override { return {"trace", source_}; }

    const automaton::ConfidenceTrace& trace() const noexcept { return trace_; }

private:
    automaton::ConfidenceTrace trace_;
    std::string source_;
};

/// Throws ErrorCode::Schema (or a trace invariant error) for bad files.
std::unique_ptr<TraceClient> load_trace_client(const std::filesystem::path& path);

} // namespace neusv::perception
