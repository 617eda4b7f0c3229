#pragma once

#include "pinmux/board.hpp"
#include "pinmux/complexity.hpp"
#include "pinmux/request.hpp"
#include "pinmux/solver.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

// Exhaustive reference implementations. These deliberately share no search
// code with the solver; they exist to check it.
namespace pinmux::oracle {

inline constexpr std::size_t kMaxPins = 8;
inline constexpr std::size_t kMaxRequest = 6;

/// Slot index -> pin declaration index, in slot (input) order.
using PinMap = std::vector<std::size_t>;

struct OracleResult {
    std::vector<PinMap> labeled;        ///< every valid injective map, lexicographic in slot order
    std::vector<PinMap> pin_set_reps;   ///< per distinct pin set, the lexicographically first map in canonical slot order
    std::optional<int> min_cost;        ///< empty when infeasible
    std::size_t labeled_count = 0;
    std::size_t pin_set_count = 0;
};

/// Tries every injective slot -> pin map. Throws CapacityError beyond
/// kMaxPins pins or kMaxRequest slots.
OracleResult brute_force_solve(const Board& board, const Request& request, const std::vector<EligibilityRule>& rules = {});

/// Counts (nonempty pin subset of size <= max_len, multiset of that size over
/// m kinds) pairs by listing them. Requires n <= 6 and m <= 4.
BigCount brute_force_space(int n, int m, int max_len);

/// Distinct (sorted kind multiset, pin set) realizations of length 1..max_len,
/// obtained by choosing one entry per pin of every pin subset.
/// Each element is (kind names sorted, pin indices ascending, total cost).
struct Realization {
    std::vector<std::string> kinds;
    std::vector<std::size_t> pins;
    int cost = 0;
    friend auto operator<=>(const Realization&, const Realization&) = default;
};
std::set<Realization> brute_force_realizations(const Board& board, std::size_t max_len);

/// Counts (nonempty pin subset, one entry per chosen pin) pairs by listing them.
BigCount brute_force_board_space(const Board& board);

/// Converts a PinMap to an Assignment in the solver's representation.
Assignment to_assignment(const Board& board, const Request& request, const PinMap& map,
                         const std::vector<EligibilityRule>& rules = {});

} // namespace pinmux::oracle
