#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "neusv/tl/proposition.hpp"

namespace neusv::perception {

/// Consecutive frames scored together; `index` is the 0-based window number.
struct FrameWindow {
    std::size_t index = 0;
    std::vector<std::filesystem::path> frames;
};

struct ClientIdentity {
    std::string name;
    std::string model;

    friend bool operator==(const ClientIdentity&, const ClientIdentity&) = default;
};

/// Maps (proposition, frame window) to a raw confidence in [0, 1].
/// Implementations must tolerate concurrent calls.
class PerceptionClient {
public:
    virtual ~PerceptionClient() = default;
    virtual double confidence(const tl::Proposition& p, const FrameWindow& window) = 0;
    virtual ClientIdentity identity() const = 0;
};

} // namespace neusv::perception
