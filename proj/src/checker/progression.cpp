#include "neusv/checker/progression.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "neusv/error.hpp"

namespace neusv::checker {

using tl::Formula;
using tl::Op;

namespace {

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
    if (f.op() == op) {
        flatten(f.lhs(), op, out);
        flatten(f.rhs(), op, out);
    } else {
        out.push_back(f);
    }
}

Formula junction(Op op, const Formula& lhs, const Formula& rhs) {
    const Formula absorbing = op == Op::And ? Formula::bottom() : Formula::top();
    const Formula neutral = op == Op::And ? Formula::top() : Formula::bottom();
    std::vector<Formula> parts;
    flatten(lhs, op, parts);
    flatten(rhs, op, parts);
    std::vector<Formula> kept;
    kept.reserve(parts.size());
    for (const auto& p : parts) {
        if (p == absorbing) return absorbing;
        if (p != neutral) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), [](const Formula& a, const Formula& b) {
        if (a.hash() != b.hash()) return a.hash() < b.hash();
        return compare(a, b) < 0;
    });
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) return neutral;
    Formula acc = kept.back();
    for (auto it = kept.rbegin() + 1; it != kept.rend(); ++it) acc = Formula::make(op, *it, acc);
    return acc;
}

Formula negation(const Formula& c) {
    if (c.op() == Op::True) return Formula::bottom();
    if (c.op() == Op::False) return Formula::top();
    if (c.op() == Op::Not) return c.child();
    return Formula::negate(c);
}

std::optional<bool> end_value(const Formula& f) {
    switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return std::nullopt;
    case Op::Not: {
        auto v = end_value(f.child());
        if (!v) return std::nullopt;
        return !*v;
    }
    case Op::And: {
        auto l = end_value(f.lhs());
        if (l == false) return false;
        auto r = end_value(f.rhs());
        if (r == false) return false;
        if (l && r) return true;
        return std::nullopt;
    }
    case Op::Or:
    case Op::Implies: {
        auto l = end_value(f.lhs());
        if (l && f.op() == Op::Implies) l = !*l;
        if (l == true) return true;
        auto r = end_value(f.rhs());
        if (r == true) return true;
        if (l && r) return false;
        return std::nullopt;
    }
    case Op::Always: return true;
    case Op::Eventually:
    case Op::Next:
    case Op::Until: return false;
    }
    return std::nullopt;
}

struct Stepper {
    const tl::PropositionSet& props;
    const tl::Valuation& sigma;

    Formula operator()(const Formula& f) const {
        switch (f.op()) {
        case Op::True:
        case Op::False: return f;
        case Op::Atom: {
            auto idx = props.index_of(f.atom_id());
            if (!idx) throw Error(ErrorCode::UnknownAtom, "atom '" + f.atom_id() + "' is not in the proposition set");
            return sigma.test(*idx) ? Formula::top() : Formula::bottom();
        }
        case Op::Not: return negation((*this)(f.child()));
        case Op::And: return junction(Op::And, (*this)(f.lhs()), (*this)(f.rhs()));
        case Op::Or: return junction(Op::Or, (*this)(f.lhs()), (*this)(f.rhs()));
        case Op::Implies: return junction(Op::Or, negation((*this)(f.lhs())), (*this)(f.rhs()));
        case Op::Always: return junction(Op::And, (*this)(f.child()), f);
        case Op::Eventually: return junction(Op::Or, (*this)(f.child()), f);
        case Op::Next: return junction(Op::And, f.child(), Formula::eventually(Formula::top()));
        case Op::Until: return junction(Op::Or, (*this)(f.rhs()), junction(Op::And, (*this)(f.lhs()), f));
        }
        return f;
    }
};

} // namespace

Formula canonicalize(const Formula& phi) {
    switch (phi.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return phi;
    case Op::Not: return negation(canonicalize(phi.child()));
    case Op::And:
    case Op::Or: return junction(phi.op(), canonicalize(phi.lhs()), canonicalize(phi.rhs()));
    case Op::Implies: return junction(Op::Or, negation(canonicalize(phi.lhs())), canonicalize(phi.rhs()));
    case Op::Always: {
        auto c = canonicalize(phi.child());
        return c.op() == Op::True ? c : Formula::always(c);
    }
    case Op::Eventually: {
        auto c = canonicalize(phi.child());
        return c.op() == Op::False ? c : Formula::eventually(c);
    }
    case Op::Next: {
        auto c = canonicalize(phi.child());
        return c.op() == Op::False ? c : Formula::next(c);
    }
    case Op::Until: {
        auto r = canonicalize(phi.rhs());
        if (r.op() == Op::False) return r;
        return Formula::until(canonicalize(phi.lhs()), r);
    }
    }
    return phi;
}

Formula progress(const Formula& phi, const tl::Valuation& sigma, const tl::PropositionSet& props) {
    if (sigma.width() != props.size()) {
        throw Error(ErrorCode::WidthMismatch, "valuation width " + std::to_string(sigma.width()) + " for " +
                                                  std::to_string(props.size()) + " propositions");
    }
    // Temporal operands are kept verbatim, so they must already be canonical.
    return Stepper{props, sigma}(canonicalize(phi));
}

bool finalize(const Formula& phi) {
    auto v = end_value(phi);
    if (!v) {
        throw Error(ErrorCode::ResidualContainsAtom, "residual depends on an atom at end of trace: " + to_string(phi));
    }
    return *v;
}

Progressor::Progressor(const tl::PropositionSet& props, std::size_t residual_cap)
    : props_(props), cap_(residual_cap) {}

Progressor::ResidualId Progressor::intern(const Formula& phi) {
    Formula c = canonicalize(phi);
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    if (residuals_.size() >= cap_) {
        throw Error(ErrorCode::StateExplosion, "more than " + std::to_string(cap_) + " distinct residual formulas");
    }
    const auto id = static_cast<ResidualId>(residuals_.size());
    residuals_.push_back(c);
    final_.push_back(-1);
    ids_.emplace(std::move(c), id);
    return id;
}

Progressor::ResidualId Progressor::step(ResidualId r, const tl::Valuation& sigma) {
    const StepKey key{r, sigma.bits()};
    if (auto it = steps_.find(key); it != steps_.end()) return it->second;
    const auto next = intern(progress(residuals_.at(r), sigma, props_));
    steps_.emplace(key, next);
    return next;
}

bool Progressor::accepts_at_end(ResidualId r) {
    auto& slot = final_.at(r);
    if (slot < 0) slot = finalize(residuals_.at(r)) ? 1 : 0;
    return slot == 1;
}

} // namespace neusv::checker
