#pragma once

#include <string_view>

#include "neusv/tl/formula.hpp"
#include "neusv/tl/proposition.hpp"

namespace neusv::tl {

/// Parses a specification string. See docs/grammar.md for the grammar.
///
/// Binding strength, tightest first: NOT/ALWAYS/EVENTUALLY/NEXT, UNTIL (left
/// associative), AND, OR, IMPLIES (right associative). Atoms are quoted
/// phrases or runs of bare words; both are normalized and must resolve to a
/// member of `props`. With an empty `props` every atom is accepted.
///
/// Throws ParseError (with line/column), ErrorCode::UnknownAtom, or
/// ErrorCode::EmptyFormula for blank input.
Formula parse_formula(std::string_view text, const PropositionSet& props = {});

/// Parses and also returns the atoms in first-appearance order, keeping the
/// phrase each atom was written with as its display text.
struct ParsedSpecification {
    Formula formula;
    PropositionSet atoms;
};
ParsedSpecification parse_specification(std::string_view text, const PropositionSet& props = {});

} // namespace neusv::tl
