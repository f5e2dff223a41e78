#include "neusv/tl/formula.hpp"

#include <algorithm>
#include <functional>

namespace neusv::tl {

struct Formula::Node {
    Op op = Op::True;
    std::string atom;
    Formula lhs{std::shared_ptr<const Node>()};
    Formula rhs{std::shared_ptr<const Node>()};
    std::uint64_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 1;
};

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv_bytes(std::uint64_t h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

std::uint64_t fnv_word(std::uint64_t h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffu;
        h *= kFnvPrime;
    }
    return h;
}

} // namespace

std::string_view to_string(Op op) noexcept {
    switch (op) {
    case Op::True: return "TRUE";
    case Op::False: return "FALSE";
    case Op::Atom: return "ATOM";
    case Op::Not: return "NOT";
    case Op::And: return "AND";
    case Op::Or: return "OR";
    case Op::Implies: return "IMPLIES";
    case Op::Always: return "ALWAYS";
    case Op::Eventually: return "EVENTUALLY";
    case Op::Next: return "NEXT";
    case Op::Until: return "UNTIL";
    }
    return "?";
}

bool is_unary(Op op) noexcept {
    return op == Op::Not || op == Op::Always || op == Op::Eventually || op == Op::Next;
}

bool is_binary(Op op) noexcept {
    return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until;
}

bool is_temporal(Op op) noexcept {
    return op == Op::Always || op == Op::Eventually || op == Op::Next || op == Op::Until;
}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::True;
        n->hash = fnv_word(kFnvOffset, static_cast<std::uint64_t>(Op::True));
        return n;
    }();
    return Formula(node);
}

Formula Formula::bottom() {
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::False;
        n->hash = fnv_word(kFnvOffset, static_cast<std::uint64_t>(Op::False));
        return n;
    }();
    return Formula(node);
}

Formula Formula::atom(std::string id) {
    auto n = std::make_shared<Node>();
    n->op = Op::Atom;
    n->hash = fnv_bytes(fnv_word(kFnvOffset, static_cast<std::uint64_t>(Op::Atom)), id);
    n->atom = std::move(id);
    return Formula(std::move(n));
}

Formula Formula::make(Op op, Formula lhs, Formula rhs) {
    switch (op) {
    case Op::True: return top();
    case Op::False: return bottom();
    case Op::Atom: return lhs;
    default: break;
    }
    auto n = std::make_shared<Node>();
    n->op = op;
    std::uint64_t h = fnv_word(kFnvOffset, static_cast<std::uint64_t>(op));
    h = fnv_word(h, lhs.hash());
    n->size = 1 + lhs.size();
    n->depth = 1 + lhs.depth();
    if (is_binary(op)) {
        h = fnv_word(h, rhs.hash());
        n->size += rhs.size();
        n->depth = std::max(n->depth, 1 + rhs.depth());
        n->rhs = std::move(rhs);
    }
    n->lhs = std::move(lhs);
    n->hash = h;
    return Formula(std::move(n));
}

Formula Formula::negate(Formula f) { return make(Op::Not, std::move(f)); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, std::move(a), std::move(b)); }
Formula Formula::always(Formula f) { return make(Op::Always, std::move(f)); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, std::move(f)); }
Formula Formula::next(Formula f) { return make(Op::Next, std::move(f)); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, std::move(a), std::move(b)); }

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::atom_id() const noexcept { return node_->atom; }
std::uint64_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::depth() const noexcept { return node_->depth; }

const Formula& Formula::lhs() const noexcept { return node_->lhs; }
const Formula& Formula::rhs() const noexcept { return node_->rhs; }

bool operator==(const Formula& a, const Formula& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->op != b.node_->op ||
        a.node_->size != b.node_->size) {
        return false;
    }
    switch (a.op()) {
    case Op::True:
    case Op::False: return true;
    case Op::Atom: return a.atom_id() == b.atom_id();
    default: break;
    }
    if (!(a.lhs() == b.lhs())) return false;
    return !is_binary(a.op()) || a.rhs() == b.rhs();
}

int compare(const Formula& a, const Formula& b) noexcept {
    if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
    switch (a.op()) {
    case Op::True:
    case Op::False: return 0;
    case Op::Atom: return a.atom_id().compare(b.atom_id()) < 0 ? -1 : (a.atom_id() == b.atom_id() ? 0 : 1);
    default: break;
    }
    if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
    return is_binary(a.op()) ? compare(a.rhs(), b.rhs()) : 0;
}

namespace {

void print(const Formula& f, std::string& out) {
    switch (f.op()) {
    case Op::True: out += "TRUE"; return;
    case Op::False: out += "FALSE"; return;
    case Op::Atom:
        out.push_back('"');
        for (char c : f.atom_id()) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        out.push_back('"');
        return;
    default: break;
    }
    out.push_back('(');
    if (is_unary(f.op())) {
        out += to_string(f.op());
        out.push_back(' ');
        print(f.child(), out);
    } else {
        print(f.lhs(), out);
        out.push_back(' ');
        out += to_string(f.op());
        out.push_back(' ');
        print(f.rhs(), out);
    }
    out.push_back(')');
}

void gather_atoms(const Formula& f, PropositionSet& out) {
    if (f.op() == Op::Atom) {
        out.add(Proposition{f.atom_id(), f.atom_id()});
        return;
    }
    if (f.is_constant()) return;
    gather_atoms(f.lhs(), out);
    if (is_binary(f.op())) gather_atoms(f.rhs(), out);
}

} // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

PropositionSet collect_atoms(const Formula& f) {
    PropositionSet out;
    gather_atoms(f, out);
    return out;
}

} // namespace neusv::tl
