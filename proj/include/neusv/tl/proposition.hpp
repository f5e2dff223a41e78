#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace neusv::tl {

/// An atomic proposition. `id` is the normalized identifier used everywhere
/// inside the pipeline; `display` keeps the phrase the proposition came from.
struct Proposition {
    std::string id;
    std::string display;

    friend bool operator==(const Proposition&, const Proposition&) = default;
};

/// Lowercases the phrase and collapses every run of whitespace or
/// punctuation into one underscore, trimming underscores at both ends.
/// Throws ErrorCode::EmptyProposition when nothing survives.
Proposition normalize_proposition(std::string_view phrase);

/// Normalized id only. Same rules and errors as normalize_proposition.
std::string normalize_id(std::string_view phrase);

/// Ordered, duplicate-free proposition list. The position of a proposition
/// is its bit index in valuations.
class PropositionSet {
public:
    PropositionSet() = default;
    explicit PropositionSet(std::vector<Proposition> items);

    /// Appends `p` unless its id is already present. Returns the index of
    /// the id either way.
    std::size_t add(Proposition p);

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    bool contains(std::string_view id) const;
    std::optional<std::size_t> index_of(std::string_view id) const;

    const Proposition& operator[](std::size_t i) const { return items_[i]; }
    const std::vector<Proposition>& items() const noexcept { return items_; }
    std::vector<std::string> ids() const;

    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }

    friend bool operator==(const PropositionSet& a, const PropositionSet& b) {
        return a.items_ == b.items_;
    }

private:
    std::vector<Proposition> items_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Truth assignment to a PropositionSet, bit i is proposition i.
class Valuation {
public:
    static constexpr std::size_t kMaxWidth = 64;

    Valuation() = default;
    Valuation(std::size_t width, std::uint64_t bits);

    static Valuation from_bools(const std::vector<bool>& bits);

    std::size_t width() const noexcept { return width_; }
    std::uint64_t bits() const noexcept { return bits_; }
    bool test(std::size_t i) const;

    /// "1,1,0,1,1" style rendering in proposition order.
    std::string to_string() const;

    friend bool operator==(const Valuation&, const Valuation&) = default;

private:
    std::size_t width_ = 0;
    std::uint64_t bits_ = 0;
};

struct BooleanTrace {
    std::vector<Valuation> steps;

    std::size_t size() const noexcept { return steps.size(); }
    /// Width shared by every step; throws WidthMismatch if they disagree.
    std::size_t width() const;
};

} // namespace neusv::tl
