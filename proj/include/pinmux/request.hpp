#pragma once

#include "pinmux/board.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pinmux {

/// A desired configuration: a multiset of function kinds, one per slot.
///
/// `slots()` keeps input order (slot index = position). `canonical()` holds
/// the same kinds stably sorted by name; `slot_of(i)` maps canonical position
/// `i` back to its slot index.
class Request {
public:
    Request() = default;
    explicit Request(std::vector<FunctionKind> slots);

    const std::vector<FunctionKind>& slots() const noexcept { return slots_; }
    const std::vector<FunctionKind>& canonical() const noexcept { return canonical_; }
    std::size_t slot_of(std::size_t canonical_pos) const { return order_.at(canonical_pos); }
    std::size_t size() const noexcept { return slots_.size(); }
    bool empty() const noexcept { return slots_.empty(); }

    std::size_t multiplicity(const FunctionKind& kind) const;

    /// Comma-joined canonical kind names, e.g. "ANALOG,ANALOG,ICU".
    std::string to_string() const;

    friend bool operator==(const Request& a, const Request& b) { return a.slots_ == b.slots_; }

private:
    std::vector<FunctionKind> slots_;
    std::vector<FunctionKind> canonical_;
    std::vector<std::size_t> order_;
};

/// Comma-separated kinds, e.g. "analog, serial-tx". Empty or blank text is the
/// empty request. Throws ParseError on an empty token or an invalid kind.
Request parse_request(std::string_view text);

/// Same multiset with slots in canonical order. Idempotent.
Request canonicalize(const Request& request);

struct QuickReject {
    bool rejected = false;
    std::string reason;
};

/// Necessary-condition filter: rejects when the request is longer than the
/// board or demands some kind more often than there are pins offering it.
/// A non-rejection says nothing about feasibility.
QuickReject quick_reject(const Board& board, const Request& request);

} // namespace pinmux
