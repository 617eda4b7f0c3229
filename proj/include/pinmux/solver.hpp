#pragma once

#include "pinmux/board.hpp"
#include "pinmux/complexity.hpp"
#include "pinmux/request.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pinmux {

/// One request slot bound to one pin, through the entry `kind`/`detail`.
struct Binding {
    std::size_t slot = 0;
    FunctionKind kind{"X"};
    std::string pin;
    std::string detail;

    friend bool operator==(const Binding&, const Binding&) = default;
};

/// Injective slot -> pin mapping. Bindings are ordered by slot index.
struct Assignment {
    std::vector<Binding> bindings;
    int total_cost = 0;
    std::uint64_t board_fingerprint = 0;

    /// Pin ids in binding order.
    std::vector<std::string> used_pins() const;
    std::size_t size() const noexcept { return bindings.size(); }

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Restricts which function entries may serve a requested kind.
/// Rules only ever remove eligibility.
struct EligibilityRule {
    std::string name;
    std::function<bool(const Pin&, const FunctionEntry&, const FunctionKind&)> admits;
};

/// ICU entries are eligible only on timer channel 1 or 2 (detail TIM<n>_CH1 or
/// TIM<n>_CH2). Entries of other kinds are unaffected.
EligibilityRule icu_channel_rule();

enum class Semantics {
    UniquePinSets, ///< one solution per distinct set of used pins
    Labeled,       ///< one solution per distinct slot -> pin binding
};

enum class BestStrategy {
    MinCostMatching, ///< exact min-cost bipartite assignment
    CostThreshold,   ///< ascending bound X in [l*PCmin, l*PCmax], first X with a solution
    EnumerateMin,    ///< minimum over the full enumeration
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

struct SolveOptions {
    Semantics semantics = Semantics::UniquePinSets;
    std::vector<EligibilityRule> rules;
    BestStrategy strategy = BestStrategy::MinCostMatching;
    std::size_t cap = kDefaultEnumerationCap;
};

/// A set of kinds whose combined demand exceeds the pins able to serve them.
struct HallWitness {
    std::vector<FunctionKind> kinds;
    std::size_t multiplicity = 0;
    std::vector<std::string> pins; ///< every pin eligible for some kind in `kinds`
};

struct Infeasible {
    enum class Reason { KindUnsupported, Pigeonhole, ExhaustedSearch };

    Reason reason = Reason::ExhaustedSearch;
    std::string message;
    std::optional<HallWitness> witness;
};

std::string to_string(Infeasible::Reason reason);

struct SolveOutcome {
    std::variant<Assignment, Infeasible> result;
    std::vector<std::string> warnings;

    bool feasible() const noexcept { return std::holds_alternative<Assignment>(result); }
    const Assignment& assignment() const { return std::get<Assignment>(result); }
    const Infeasible& infeasible() const { return std::get<Infeasible>(result); }
};

/// Lexicographically first assignment, comparing pin declaration indices in
/// canonical slot order, or Infeasible with a Hall witness.
SolveOutcome find_feasible(const Board& board, const Request& request, const SolveOptions& options = {});

/// Streams solutions in lexicographic order under `options.semantics`.
/// Stops early when `visit` returns false.
void for_each_solution(const Board& board, const Request& request, const SolveOptions& options,
                       const std::function<bool(const Assignment&)>& visit);

/// Materializes every solution; throws CapacityError beyond `options.cap`.
std::vector<Assignment> enumerate_all(const Board& board, const Request& request, const SolveOptions& options = {});

struct SolutionCounts {
    BigCount pin_sets = 0;
    BigCount labeled = 0;
};

/// Both solution counts without materializing solutions.
SolutionCounts count_solutions(const Board& board, const Request& request, const SolveOptions& options = {});

/// Minimum-cost assignment; ties go to the lexicographically first.
/// Every strategy returns the same result.
SolveOutcome find_best(const Board& board, const Request& request, const SolveOptions& options = {});

/// Sum of pin costs over the used pins. Throws LookupError on unknown pins.
int assignment_cost(const Board& board, const Assignment& assignment);

/// Checks injectivity, eligibility and cost against `board`; returns a
/// description of the first violation, or an empty string.
std::string validate_assignment(const Board& board, const Request& request, const Assignment& assignment,
                                const std::vector<EligibilityRule>& rules = {});

} // namespace pinmux
