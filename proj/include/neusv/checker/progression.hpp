#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "neusv/tl/formula.hpp"
#include "neusv/tl/proposition.hpp"

namespace neusv::checker {

/// Simplified normal form used as progression state. IMPLIES is rewritten
/// to OR, AND/OR chains are flattened, deduplicated and sorted, constants
/// are folded and double negation is removed. Idempotent.
tl::Formula canonicalize(const tl::Formula& phi);

/// Obligation left for the rest of the trace after reading `sigma`.
/// Strong NEXT leaves its operand guarded by EVENTUALLY TRUE, which
/// records that a further step is required. Result is canonical.
///
/// Throws ErrorCode::WidthMismatch when sigma.width() != props.size() and
/// ErrorCode::UnknownAtom for atoms outside `props`.
tl::Formula progress(const tl::Formula& phi, const tl::Valuation& sigma, const tl::PropositionSet& props);

/// Truth of a residual on the empty remainder of a finished trace.
/// Throws ErrorCode::ResidualContainsAtom if an unguarded atom decides it.
bool finalize(const tl::Formula& phi);

inline constexpr std::size_t kDefaultResidualCap = 100000;

/// Interns canonical residuals and memoizes progression steps. One
/// instance serves one checking run; it is not thread-safe.
class Progressor {
public:
    using ResidualId = std::uint32_t;

    explicit Progressor(const tl::PropositionSet& props, std::size_t residual_cap = kDefaultResidualCap);

    /// Canonicalizes and interns. Throws ErrorCode::StateExplosion past the cap.
    ResidualId intern(const tl::Formula& phi);
    ResidualId step(ResidualId r, const tl::Valuation& sigma);
    bool accepts_at_end(ResidualId r);

    const tl::Formula& residual(ResidualId r) const { return residuals_.at(r); }
    std::size_t residual_count() const noexcept { return residuals_.size(); }

private:
    struct StepKey {
        ResidualId residual;
        std::uint64_t bits;
        bool operator==(const StepKey&) const = default;
    };
    struct StepKeyHash {
        std::size_t operator()(const StepKey& k) const noexcept {
            return std::hash<std::uint64_t>{}(k.bits * 0x9e3779b97f4a7c15ULL ^ k.residual);
        }
    };

    tl::PropositionSet props_;
    std::size_t cap_;
    std::vector<tl::Formula> residuals_;
    std::unordered_map<tl::Formula, ResidualId, tl::FormulaHash> ids_;
    std::unordered_map<StepKey, ResidualId, StepKeyHash> steps_;
    std::vector<signed char> final_;
};

} // namespace neusv::checker
