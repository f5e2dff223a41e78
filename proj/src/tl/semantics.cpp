#include "neusv/tl/semantics.hpp"

#include <string>

#include "neusv/error.hpp"

namespace neusv::tl {

namespace {

bool eval(const Formula& f, const BooleanTrace& t, const PropositionSet& props, std::size_t pos) {
    const std::size_t n = t.size();
    switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: {
        auto idx = props.index_of(f.atom_id());
        if (!idx) throw Error(ErrorCode::UnknownAtom, "atom '" + f.atom_id() + "' is not in the proposition set");
        return t.steps[pos].test(*idx);
    }
    case Op::Not: return !eval(f.child(), t, props, pos);
    case Op::And: return eval(f.lhs(), t, props, pos) && eval(f.rhs(), t, props, pos);
    case Op::Or: return eval(f.lhs(), t, props, pos) || eval(f.rhs(), t, props, pos);
    case Op::Implies: return !eval(f.lhs(), t, props, pos) || eval(f.rhs(), t, props, pos);
    case Op::Always:
        for (std::size_t k = pos; k < n; ++k) {
            if (!eval(f.child(), t, props, k)) return false;
        }
        return true;
    case Op::Eventually:
        for (std::size_t k = pos; k < n; ++k) {
            if (eval(f.child(), t, props, k)) return true;
        }
        return false;
    case Op::Next: return pos + 1 < n && eval(f.child(), t, props, pos + 1);
    case Op::Until:
        for (std::size_t j = pos; j < n; ++j) {
            if (eval(f.rhs(), t, props, j)) return true;
            if (!eval(f.lhs(), t, props, j)) return false;
        }
        return false;
    }
    return false;
}

} // namespace

bool evaluate_trace(const Formula& phi, const BooleanTrace& trace, const PropositionSet& props,
                    std::size_t pos) {
    if (pos >= trace.size()) {
        throw Error(ErrorCode::Domain, "position " + std::to_string(pos) + " outside trace of length " +
                                           std::to_string(trace.size()));
    }
    const std::size_t width = trace.width();
    if (props.size() > width) {
        for (const auto& p : collect_atoms(phi)) {
            auto idx = props.index_of(p.id);
            if (idx && *idx >= width) {
                throw Error(ErrorCode::WidthMismatch, "atom '" + p.id + "' has index " + std::to_string(*idx) +
                                                          " but valuations have width " + std::to_string(width));
            }
        }
    }
    return eval(phi, trace, props, pos);
}

} // namespace neusv::tl
