#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neusv/automaton/confidence_trace.hpp"
#include "neusv/tl/proposition.hpp"

namespace neusv::automaton {

using StateId = std::uint32_t;

enum class StateKind { Initial, Window, Terminal };

struct State {
    StateKind kind = StateKind::Window;
    /// 0 for the initial state, 1..n for window layers, n + 1 for terminal.
    std::size_t layer = 0;
    /// Meaningful for window states only.
    tl::Valuation label;

    /// "initial", "terminal", or the valuation rendering.
    std::string label_text() const;
};

struct Transition {
    StateId from;
    StateId to;
    double probability;
};

/// Layered discrete-time Markov chain over frame windows. Immutable once
/// constructed; the constructor only checks that edge endpoints exist.
class VideoAutomaton {
public:
    VideoAutomaton(tl::PropositionSet props, std::vector<State> states, std::vector<Transition> transitions,
                   StateId initial, StateId terminal);

    const tl::PropositionSet& props() const noexcept { return props_; }
    std::span<const State> states() const noexcept { return states_; }
    const State& state(StateId id) const { return states_.at(id); }
    std::size_t state_count() const noexcept { return states_.size(); }
    std::size_t transition_count() const noexcept { return edges_.size(); }
    StateId initial() const noexcept { return initial_; }
    StateId terminal() const noexcept { return terminal_; }

    /// Number of window layers.
    std::size_t layer_count() const noexcept { return layers_; }

    /// Outgoing edges of `id`, in insertion order.
    std::span<const Transition> successors(StateId id) const;

    /// Edge probability, or nullopt when there is no such edge.
    std::optional<double> probability(StateId from, StateId to) const;

    /// Window states of layer j (1-based), in ascending valuation order.
    std::vector<StateId> layer(std::size_t j) const;

private:
    tl::PropositionSet props_;
    std::vector<State> states_;
    std::vector<Transition> edges_;
    std::vector<std::size_t> offsets_;
    StateId initial_;
    StateId terminal_;
    std::size_t layers_ = 0;
};

struct BuildOptions {
    /// Refuse to materialize more transitions than this.
    std::size_t max_transitions = 50'000'000;
};

/// Explicit layered automaton of a calibrated trace: one state per
/// valuation with nonzero probability in each window, fully connected
/// between consecutive layers, and a terminal state after the last layer.
///
/// Throws ErrorCode::Uncalibrated for raw traces and
/// ErrorCode::StateExplosion when the transition budget is exceeded.
VideoAutomaton build_automaton(const ConfidenceTrace& trace, const BuildOptions& options = {});

enum class ViolationKind { Stochasticity, Layering, Positivity, Structure };

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    StateId state;
    std::string message;
};

/// Tolerance on outgoing probability sums.
inline constexpr double kStochasticTolerance = 1e-9;

/// Every invariant breach found; empty means well-formed.
std::vector<Violation> validate_automaton(const VideoAutomaton& a);

} // namespace neusv::automaton
