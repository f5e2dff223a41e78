#pragma once

#include <cstddef>
#include <string_view>

#include "neusv/automaton/confidence_trace.hpp"
#include "neusv/automaton/video_automaton.hpp"
#include "neusv/checker/progression.hpp"
#include "neusv/tl/formula.hpp"

namespace neusv::checker {

enum class Method { Dp, Fused, BruteForce };

std::string_view to_string(Method m);

struct SatisfactionResult {
    double probability = 0.0;
    /// Distinct (state, residual) pairs visited; paths for brute force.
    std::size_t state_count = 0;
    /// Distinct canonical residual formulas.
    std::size_t residual_count = 0;
    Method method = Method::Dp;
};

struct CheckOptions {
    std::size_t residual_cap = kDefaultResidualCap;
};

/// Probability mass of automaton paths whose label sequence satisfies `phi`,
/// by a forward sweep over (state, residual formula) pairs.
///
/// Throws ErrorCode::PropositionMismatch if `phi` mentions atoms the
/// automaton lacks, ErrorCode::Schema for automata that fail validation and
/// ErrorCode::StateExplosion past the residual cap.
SatisfactionResult satisfaction_probability(const automaton::VideoAutomaton& a, const tl::Formula& phi,
                                            const CheckOptions& options = {});

/// Same sweep driven directly by the per-window valuation distributions of a
/// calibrated trace, without materializing transitions. Returns exactly the
/// value the explicit automaton of the same trace yields.
///
/// Throws ErrorCode::Uncalibrated for raw traces, plus the errors above.
SatisfactionResult satisfaction_probability(const automaton::ConfidenceTrace& trace, const tl::Formula& phi,
                                            const CheckOptions& options = {});

inline constexpr std::size_t kMaxEnumeratedPaths = 1'000'000;

/// Enumerates every initial-to-terminal path and evaluates its label trace
/// directly. Throws ErrorCode::InstanceTooLarge above `max_paths` paths.
SatisfactionResult brute_force_probability(const automaton::VideoAutomaton& a, const tl::Formula& phi,
                                           std::size_t max_paths = kMaxEnumeratedPaths);

} // namespace neusv::checker
