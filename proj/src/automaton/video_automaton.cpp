#include "neusv/automaton/video_automaton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "neusv/error.hpp"

namespace neusv::automaton {

std::string State::label_text() const {
    switch (kind) {
    case StateKind::Initial: return "initial";
    case StateKind::Terminal: return "terminal";
    case StateKind::Window: return label.to_string();
    }
    return {};
}

VideoAutomaton::VideoAutomaton(tl::PropositionSet props, std::vector<State> states,
                               std::vector<Transition> transitions, StateId initial, StateId terminal)
    : props_(std::move(props)), states_(std::move(states)), edges_(std::move(transitions)), initial_(initial),
      terminal_(terminal) {
    const auto n = states_.size();
    if (initial_ >= n || terminal_ >= n) throw Error(ErrorCode::Schema, "initial or terminal state out of range");
    for (const auto& e : edges_) {
        if (e.from >= n || e.to >= n) throw Error(ErrorCode::Schema, "transition endpoint out of range");
    }
    std::stable_sort(edges_.begin(), edges_.end(),
                     [](const Transition& a, const Transition& b) { return a.from < b.from; });
    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.from + 1];
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    for (const auto& s : states_) {
        if (s.kind == StateKind::Window) layers_ = std::max(layers_, s.layer);
    }
}

std::span<const Transition> VideoAutomaton::successors(StateId id) const {
    if (id >= states_.size()) throw Error(ErrorCode::Domain, "state id out of range");
    return std::span<const Transition>(edges_).subspan(offsets_[id], offsets_[id + 1] - offsets_[id]);
}

std::optional<double> VideoAutomaton::probability(StateId from, StateId to) const {
    for (const auto& e : successors(from)) {
        if (e.to == to) return e.probability;
    }
    return std::nullopt;
}

std::vector<StateId> VideoAutomaton::layer(std::size_t j) const {
    std::vector<StateId> out;
    for (StateId i = 0; i < states_.size(); ++i) {
        if (states_[i].kind == StateKind::Window && states_[i].layer == j) out.push_back(i);
    }
    std::stable_sort(out.begin(), out.end(), [&](StateId a, StateId b) {
        return states_[a].label.bits() < states_[b].label.bits();
    });
    return out;
}

VideoAutomaton build_automaton(const ConfidenceTrace& trace, const BuildOptions& options) {
    if (!trace.calibrated()) {
        throw Error(ErrorCode::Uncalibrated, "automaton construction needs calibrated confidences");
    }
    const std::size_t n = trace.window_count();
    std::vector<State> states;
    std::vector<Transition> edges;
    states.push_back({StateKind::Initial, 0, {}});

    std::vector<StateId> previous{0};
    for (std::size_t j = 0; j < n; ++j) {
        const auto dist = window_distribution(trace, j);
        if (edges.size() + previous.size() * dist.size() > options.max_transitions) {
            throw Error(ErrorCode::StateExplosion, "explicit automaton exceeds " +
                                                       std::to_string(options.max_transitions) + " transitions");
        }
        std::vector<StateId> current;
        current.reserve(dist.size());
        for (const auto& wv : dist) {
            current.push_back(static_cast<StateId>(states.size()));
            states.push_back({StateKind::Window, j + 1, wv.label});
        }
        for (StateId from : previous) {
            for (std::size_t k = 0; k < dist.size(); ++k) edges.push_back({from, current[k], dist[k].probability});
        }
        previous = std::move(current);
    }

    const auto terminal = static_cast<StateId>(states.size());
    states.push_back({StateKind::Terminal, n + 1, {}});
    for (StateId from : previous) edges.push_back({from, terminal, 1.0});
    return VideoAutomaton(trace.props(), std::move(states), std::move(edges), 0, terminal);
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::Stochasticity: return "stochasticity";
    case ViolationKind::Layering: return "layering";
    case ViolationKind::Positivity: return "positivity";
    case ViolationKind::Structure: return "structure";
    }
    return "unknown";
}

namespace {

std::string describe(const VideoAutomaton& a, StateId id) {
    const auto& s = a.state(id);
    return "state " + std::to_string(id) + " (layer " + std::to_string(s.layer) + ", " + s.label_text() + ")";
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::vector<Violation> validate_automaton(const VideoAutomaton& a) {
    std::vector<Violation> out;
    const std::size_t n = a.layer_count();
    const auto& init = a.state(a.initial());
    const auto& term = a.state(a.terminal());

    if (init.kind != StateKind::Initial || init.layer != 0) {
        out.push_back({ViolationKind::Structure, a.initial(), describe(a, a.initial()) + " is not an initial state"});
    }
    if (term.kind != StateKind::Terminal || term.layer != n + 1) {
        out.push_back({ViolationKind::Structure, a.terminal(),
                       describe(a, a.terminal()) + " is not a terminal state after layer " + std::to_string(n)});
    }

    for (StateId id = 0; id < a.state_count(); ++id) {
        const auto& s = a.state(id);
        if (s.kind == StateKind::Window && (s.label.width() != a.props().size() || s.layer == 0)) {
            out.push_back({ViolationKind::Structure, id, describe(a, id) + " has a malformed label or layer"});
        }
        if (s.kind != StateKind::Window && id != a.initial() && id != a.terminal()) {
            out.push_back({ViolationKind::Structure, id, describe(a, id) + " is a stray sentinel state"});
        }

        std::set<StateId> targets;
        double sum = 0.0;
        for (const auto& e : a.successors(id)) {
            const auto& t = a.state(e.to);
            sum += e.probability;
            if (!targets.insert(e.to).second) {
                out.push_back({ViolationKind::Structure, id,
                               describe(a, id) + " has a duplicate edge to " + describe(a, e.to)});
            }
            if (!(e.probability > 0.0 && e.probability <= 1.0 + kStochasticTolerance)) {
                out.push_back({ViolationKind::Positivity, id,
                               describe(a, id) + " has edge probability " + format_double(e.probability) + " to " +
                                   describe(a, e.to)});
            }
            const bool forward = t.layer == s.layer + 1 && s.kind != StateKind::Terminal &&
                                 t.kind != StateKind::Initial &&
                                 (t.kind == StateKind::Terminal) == (s.layer == n);
            if (!forward) {
                out.push_back({ViolationKind::Layering, id,
                               describe(a, id) + " has an edge to " + describe(a, e.to)});
            }
        }
        if (id == a.terminal()) continue;
        if (std::abs(sum - 1.0) > kStochasticTolerance) {
            out.push_back({ViolationKind::Stochasticity, id,
                           describe(a, id) + " has outgoing probability sum " + format_double(sum)});
        }
    }
    return out;
}

} // namespace neusv::automaton
