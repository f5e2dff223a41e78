#pragma once

#include <cstddef>

#include "neusv/tl/formula.hpp"
#include "neusv/tl/proposition.hpp"

namespace neusv::tl {

/// Finite-trace truth of `phi` at position `pos` of `trace`. Atom ids are
/// mapped to valuation bits through `props`.
///
///  - ALWAYS f: f holds at every position in [pos, n)
///  - EVENTUALLY f: f holds at some position in [pos, n)
///  - NEXT f (strong): pos + 1 < n and f holds at pos + 1
///  - f UNTIL g: some j >= pos has g, and f holds on [pos, j)
///
/// Throws ErrorCode::WidthMismatch when an atom's index falls outside the
/// valuation width, ErrorCode::UnknownAtom for atoms missing from `props`,
/// and ErrorCode::Domain when `pos` is out of range.
bool evaluate_trace(const Formula& phi, const BooleanTrace& trace, const PropositionSet& props,
                    std::size_t pos = 0);

} // namespace neusv::tl
