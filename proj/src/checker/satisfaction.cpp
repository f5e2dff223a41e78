#include "neusv/checker/satisfaction.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "neusv/error.hpp"
#include "neusv/tl/semantics.hpp"

namespace neusv::checker {

using automaton::ConfidenceTrace;
using automaton::StateId;
using automaton::StateKind;
using automaton::VideoAutomaton;
using tl::Formula;

std::string_view to_string(Method m) {
    switch (m) {
    case Method::Dp: return "dp";
    case Method::Fused: return "fused";
    case Method::BruteForce: return "brute_force";
    }
    return "unknown";
}

namespace {

void require_atoms(const Formula& phi, const tl::PropositionSet& props) {
    for (const auto& p : tl::collect_atoms(phi)) {
        if (!props.contains(p.id)) {
            throw Error(ErrorCode::PropositionMismatch, "formula atom '" + p.id + "' has no confidence column");
        }
    }
}

void require_valid(const VideoAutomaton& a) {
    auto violations = automaton::validate_automaton(a);
    if (!violations.empty()) {
        throw Error(ErrorCode::Schema, "malformed automaton: " + violations.front().message);
    }
}

class ExplicitGraph {
public:
    explicit ExplicitGraph(const VideoAutomaton& a) : a_(a) {}

    std::uint64_t initial() const { return a_.initial(); }
    bool is_terminal(std::uint64_t n) const { return n == a_.terminal(); }

    template <class Fn>
    void for_each_successor(std::uint64_t n, Fn&& fn) const {
        for (const auto& e : a_.successors(static_cast<StateId>(n))) {
            const auto& t = a_.state(e.to);
            fn(std::uint64_t{e.to}, t.kind == StateKind::Window ? &t.label : nullptr, e.probability);
        }
    }

private:
    const VideoAutomaton& a_;
};

// Numbers nodes exactly as build_automaton numbers states.
class TraceGraph {
public:
    explicit TraceGraph(const ConfidenceTrace& trace) {
        std::uint64_t next = 1;
        for (std::size_t j = 0; j < trace.window_count(); ++j) {
            first_.push_back(next);
            layers_.push_back(automaton::window_distribution(trace, j));
            next += layers_.back().size();
        }
        terminal_ = next;
        first_.push_back(next);
    }

    std::uint64_t initial() const { return 0; }
    bool is_terminal(std::uint64_t n) const { return n == terminal_; }

    template <class Fn>
    void for_each_successor(std::uint64_t n, Fn&& fn) const {
        if (n == terminal_) return;
        // Layer of n: 0 for the initial node, else the window it belongs to plus one.
        const std::size_t layer =
            n == 0 ? 0 : static_cast<std::size_t>(std::upper_bound(first_.begin(), first_.end(), n) - first_.begin());
        if (layer == layers_.size()) {
            fn(terminal_, static_cast<const tl::Valuation*>(nullptr), 1.0);
            return;
        }
        const auto& dist = layers_[layer];
        for (std::size_t k = 0; k < dist.size(); ++k) fn(first_[layer] + k, &dist[k].label, dist[k].probability);
    }

private:
    std::vector<std::vector<automaton::WeightedValuation>> layers_;
    std::vector<std::uint64_t> first_;
    std::uint64_t terminal_ = 0;
};

struct Entry {
    std::uint64_t node;
    Progressor::ResidualId residual;
    double mass;
};

struct PairKey {
    std::uint64_t node;
    Progressor::ResidualId residual;
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.node * 0x9e3779b97f4a7c15ULL ^ k.residual);
    }
};

template <class Graph>
SatisfactionResult sweep(const Graph& g, const tl::PropositionSet& props, const Formula& phi,
                         const CheckOptions& options, Method method) {
    Progressor prog(props, options.residual_cap);
    std::vector<Entry> frontier{{g.initial(), prog.intern(phi), 1.0}};
    std::size_t visited = 1;
    double accepted = 0.0;

    while (!frontier.empty()) {
        std::vector<Entry> next;
        std::unordered_map<PairKey, std::size_t, PairKeyHash> index;
        for (const auto& e : frontier) {
            g.for_each_successor(e.node, [&](std::uint64_t to, const tl::Valuation* label, double p) {
                const auto r = label ? prog.step(e.residual, *label) : e.residual;
                auto [it, fresh] = index.try_emplace(PairKey{to, r}, next.size());
                if (fresh) next.push_back({to, r, 0.0});
                next[it->second].mass += e.mass * p;
            });
        }
        visited += next.size();
        frontier.clear();
        for (const auto& e : next) {
            if (g.is_terminal(e.node)) {
                if (prog.accepts_at_end(e.residual)) accepted += e.mass;
            } else {
                frontier.push_back(e);
            }
        }
    }

    return {std::clamp(accepted, 0.0, 1.0), visited, prog.residual_count(), method};
}

} // namespace

SatisfactionResult satisfaction_probability(const VideoAutomaton& a, const Formula& phi,
                                            const CheckOptions& options) {
    require_atoms(phi, a.props());
    require_valid(a);
    return sweep(ExplicitGraph(a), a.props(), phi, options, Method::Dp);
}

SatisfactionResult satisfaction_probability(const ConfidenceTrace& trace, const Formula& phi,
                                            const CheckOptions& options) {
    if (!trace.calibrated()) throw Error(ErrorCode::Uncalibrated, "model checking needs calibrated confidences");
    require_atoms(phi, trace.props());
    return sweep(TraceGraph(trace), trace.props(), phi, options, Method::Fused);
}

SatisfactionResult brute_force_probability(const VideoAutomaton& a, const Formula& phi, std::size_t max_paths) {
    require_atoms(phi, a.props());
    require_valid(a);

    std::vector<double> paths(a.state_count(), -1.0);
    std::function<double(StateId)> count = [&](StateId s) -> double {
        if (paths[s] >= 0) return paths[s];
        double total = s == a.terminal() ? 1.0 : 0.0;
        for (const auto& e : a.successors(s)) total += count(e.to);
        return paths[s] = total;
    };
    const double total_paths = count(a.initial());
    if (total_paths > static_cast<double>(max_paths)) {
        throw Error(ErrorCode::InstanceTooLarge, "automaton has " + std::to_string(total_paths) +
                                                     " paths, above the limit of " + std::to_string(max_paths));
    }

    tl::BooleanTrace labels;
    double accepted = 0.0;
    std::size_t enumerated = 0;
    std::function<void(StateId, double)> walk = [&](StateId s, double mass) {
        if (s == a.terminal()) {
            ++enumerated;
            if (tl::evaluate_trace(phi, labels, a.props())) accepted += mass;
            return;
        }
        for (const auto& e : a.successors(s)) {
            const auto& t = a.state(e.to);
            const bool window = t.kind == StateKind::Window;
            if (window) labels.steps.push_back(t.label);
            walk(e.to, mass * e.probability);
            if (window) labels.steps.pop_back();
        }
    };
    walk(a.initial(), 1.0);
    return {std::clamp(accepted, 0.0, 1.0), enumerated, 0, Method::BruteForce};
}

} // namespace neusv::checker
