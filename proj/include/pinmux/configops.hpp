#pragma once

#include "pinmux/board.hpp"
#include "pinmux/request.hpp"
#include "pinmux/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pinmux {

/// Multiset sum of two requests, canonicalized.
Request merge_requests(const Request& a, const Request& b);

/// Change of one pin between two assignments. `before`/`after` are empty when
/// the pin is unused on that side.
struct PinChange {
    std::string pin;
    std::optional<Binding> before;
    std::optional<Binding> after;

    friend bool operator==(const PinChange&, const PinChange&) = default;
};

struct ConfigDiff {
    std::vector<FunctionKind> added_slots;   ///< kinds present in the second configuration only
    std::vector<FunctionKind> removed_slots; ///< kinds present in the first configuration only
    std::vector<PinChange> changes;          ///< one entry per pin whose binding differs
    int cost_delta = 0;

    bool empty() const noexcept { return added_slots.empty() && removed_slots.empty() && changes.empty() && cost_delta == 0; }
};

/// Structural comparison of two assignments of the same board.
/// Throws Error if they were computed for different boards.
ConfigDiff diff_assignments(const Assignment& a, const Assignment& b);

/// Applies `diff` to `a`; apply_diff(a, diff_assignments(a, b)) == b.
Assignment apply_diff(const Assignment& a, const ConfigDiff& diff);

/// Adds `extra` to an existing assignment without rebinding its pins: solves
/// `extra` at minimum cost on the pins `base` leaves free. Extension slots are
/// numbered after the base slots.
SolveOutcome extend_assignment(const Board& board, const Assignment& base, const Request& extra,
                               const SolveOptions& options = {});

} // namespace pinmux
