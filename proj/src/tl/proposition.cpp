#include "neusv/tl/proposition.hpp"

#include <cctype>

#include "neusv/error.hpp"

namespace neusv::tl {

std::string normalize_id(std::string_view phrase) {
    std::string out;
    out.reserve(phrase.size());
    bool pending_sep = false;
    for (unsigned char ch : phrase) {
        if (std::isalnum(ch) && ch < 0x80) {
            if (pending_sep && !out.empty()) out.push_back('_');
            pending_sep = false;
            out.push_back(static_cast<char>(std::tolower(ch)));
        } else {
            pending_sep = true;
        }
    }
    if (out.empty()) {
        throw Error(ErrorCode::EmptyProposition,
                    "proposition '" + std::string(phrase) + "' is empty after normalization");
    }
    return out;
}

Proposition normalize_proposition(std::string_view phrase) {
    auto first = phrase.find_first_not_of(" \t\r\n");
    auto last = phrase.find_last_not_of(" \t\r\n");
    std::string display = first == std::string_view::npos
        ? std::string()
        : std::string(phrase.substr(first, last - first + 1));
    return Proposition{normalize_id(phrase), std::move(display)};
}

PropositionSet::PropositionSet(std::vector<Proposition> items) {
    for (auto& p : items) add(std::move(p));
}

std::size_t PropositionSet::add(Proposition p) {
    if (auto it = index_.find(p.id); it != index_.end()) return it->second;
    std::size_t idx = items_.size();
    index_.emplace(p.id, idx);
    items_.push_back(std::move(p));
    return idx;
}

bool PropositionSet::contains(std::string_view id) const {
    return index_.count(std::string(id)) != 0;
}

std::optional<std::size_t> PropositionSet::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> PropositionSet::ids() const {
    std::vector<std::string> out;
    out.reserve(items_.size());
    for (const auto& p : items_) out.push_back(p.id);
    return out;
}

Valuation::Valuation(std::size_t width, std::uint64_t bits) : width_(width), bits_(bits) {
    if (width > kMaxWidth) {
        throw Error(ErrorCode::WidthMismatch,
                    "valuation width " + std::to_string(width) + " exceeds " + std::to_string(kMaxWidth));
    }
    if (width < kMaxWidth) bits_ &= (std::uint64_t{1} << width) - 1;
}

Valuation Valuation::from_bools(const std::vector<bool>& bits) {
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < bits.size() && i < kMaxWidth; ++i) {
        if (bits[i]) packed |= std::uint64_t{1} << i;
    }
    return Valuation(bits.size(), packed);
}

bool Valuation::test(std::size_t i) const {
    if (i >= width_) {
        throw Error(ErrorCode::WidthMismatch,
                    "proposition index " + std::to_string(i) + " outside valuation width " +
                        std::to_string(width_));
    }
    return (bits_ >> i) & 1u;
}

std::string Valuation::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < width_; ++i) {
        if (i) out.push_back(',');
        out.push_back(((bits_ >> i) & 1u) ? '1' : '0');
    }
    return out;
}

std::size_t BooleanTrace::width() const {
    if (steps.empty()) return 0;
    std::size_t w = steps.front().width();
    for (const auto& s : steps) {
        if (s.width() != w) throw Error(ErrorCode::WidthMismatch, "trace steps have differing widths");
    }
    return w;
}

} // namespace neusv::tl
