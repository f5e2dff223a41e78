#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "neusv/tl/proposition.hpp"

namespace neusv::tl {

enum class Op : std::uint8_t {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Always,
    Eventually,
    Next,
    Until,
};

std::string_view to_string(Op op) noexcept;
bool is_unary(Op op) noexcept;
bool is_binary(Op op) noexcept;
bool is_temporal(Op op) noexcept;

/// Immutable temporal-logic formula. Copies share structure; equality and
/// hashing are structural, so formulas can key hash maps directly.
class Formula {
public:
    /// The constant True.
    Formula();

    static Formula top();
    static Formula bottom();
    static Formula atom(std::string id);
    static Formula negate(Formula f);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula always(Formula f);
    static Formula eventually(Formula f);
    static Formula next(Formula f);
    static Formula until(Formula lhs, Formula rhs);
    /// Builds a node of the given operator from one or two operands.
    static Formula make(Op op, Formula lhs, Formula rhs = Formula());

    Op op() const noexcept;
    const std::string& atom_id() const noexcept;
    /// Operand of a unary node, or the left operand of a binary node.
    const Formula& lhs() const noexcept;
    const Formula& rhs() const noexcept;
    const Formula& child() const noexcept { return lhs(); }

    std::uint64_t hash() const noexcept;
    std::size_t size() const noexcept;
    std::size_t depth() const noexcept;
    bool is_constant() const noexcept { return op() == Op::True || op() == Op::False; }

    friend bool operator==(const Formula& a, const Formula& b) noexcept;
    friend bool operator!=(const Formula& a, const Formula& b) noexcept { return !(a == b); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return static_cast<std::size_t>(f.hash()); }
};

/// Total structural order: operator, then atom id, then operands.
int compare(const Formula& a, const Formula& b) noexcept;

/// Fully parenthesized word-operator form, e.g. `("a" UNTIL (NOT "b"))`.
/// parse_formula reads it back to a structurally equal formula.
std::string to_string(const Formula& f);

/// Atoms in first-appearance (left-to-right) order, deduplicated. Display
/// phrases equal the ids.
PropositionSet collect_atoms(const Formula& f);

} // namespace neusv::tl
