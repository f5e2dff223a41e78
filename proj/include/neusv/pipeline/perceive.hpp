#pragma once

#include <cstddef>
#include <span>

#include "neusv/automaton/confidence_trace.hpp"
#include "neusv/perception/client.hpp"

namespace neusv::pipeline {

inline constexpr std::size_t kDefaultParallelism = 4;

/// Raw confidences of every proposition in every window. At most
/// `parallelism` requests are in flight. Each result is stored at its
/// (window, proposition) slot, so the trace does not depend on scheduling.
///
/// The first failure in (window, proposition) order is rethrown with its
/// position prepended; the error code is kept.
automaton::ConfidenceTrace perceive_trace(perception::PerceptionClient& client, const tl::PropositionSet& props,
                                          std::span<const perception::FrameWindow> windows, std::size_t window_size,
                                          std::size_t parallelism = kDefaultParallelism);

} // namespace neusv::pipeline
