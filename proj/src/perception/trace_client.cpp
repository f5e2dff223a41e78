#include "neusv/perception/trace_client.hpp"

#include "neusv/error.hpp"
#include "neusv/io/formats.hpp"

namespace neusv::perception {

TraceClient::TraceClient(automaton::ConfidenceTrace trace, std::string source)
    : trace_(std::move(trace)), source_(std::move(source)) {}

double TraceClient::confidence(const tl::Proposition& p, const FrameWindow& window) {
    auto idx = trace_.props().index_of(p.id);
    if (!idx) throw Error(ErrorCode::MissingKey, "trace " + source_ + " has no proposition '" + p.id + "'");
    if (window.index >= trace_.window_count()) {
        throw Error(ErrorCode::MissingKey, "trace " + source_ + " has no window " + std::to_string(window.index));
    }
    return trace_.at(window.index, *idx);
}

std::unique_ptr<TraceClient> load_trace_client(const std::filesystem::path& path) {
    return std::make_unique<TraceClient>(io::load_trace(path), path.filename().string());
}

} // namespace neusv::perception
