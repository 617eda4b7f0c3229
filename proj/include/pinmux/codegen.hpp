#pragma once

#include "pinmux/board.hpp"
#include "pinmux/complexity.hpp"
#include "pinmux/request.hpp"

#include <cstddef>
#include <ostream>
#include <string>

namespace pinmux {

enum class EmitterKind { Prolog, AlloySpec, AlloyAssert, Dot };

struct EmitterStats {
    std::size_t items = 0; ///< facts, signatures, assertions or edges, depending on the emitter
    std::size_t bytes = 0;
};

struct EmitterOutput {
    EmitterKind kind = EmitterKind::Prolog;
    std::string text;
    EmitterStats stats;
};

inline constexpr std::size_t kDefaultFactCap = 5'000'000;

/// Upper bound on the number of Prolog facts for `max_len`: the number of
/// (pin subset of size <= max_len, one distinct kind per pin) choices.
BigCount estimate_prolog_facts(const Board& board, std::size_t max_len);

/// Writes the Prolog model to `sink`: one `config(Kinds,[Pins,Cost]).` fact per
/// (sorted kind multiset, pin set realizing it) for lengths 1..max_len,
/// followed by the getConfig/allConfigs/cheapestConfig rules.
EmitterStats emit_prolog(const Board& board, std::size_t max_len, std::ostream& sink);

/// In-memory variant. Throws CapacityError if the estimated fact count
/// exceeds `fact_cap`.
EmitterOutput emit_prolog(const Board& board, std::size_t max_len, std::size_t fact_cap = kDefaultFactCap);

/// Alloy signatures: Pin/ConnType/ConnDetail declarations plus one
/// `one sig <ID> extends Pin` block per pin.
EmitterOutput emit_alloy_spec(const Board& board);

/// Negated assertion whose counterexample is a feasible assignment for `request`.
EmitterOutput emit_alloy_feasibility_assertion(const Request& request);

/// One cost-bounded assertion per X in [l*pc_min, l*pc_max], ascending.
EmitterOutput emit_alloy_best_assertions(const Request& request, int pc_min, int pc_max);

/// Directed domain graph: virtual begin/end nodes, one node per pin labeled
/// with its entries, begin->pin, pin->pin (distinct pins) and pin->end edges.
EmitterOutput emit_graph_dot(const Board& board);

/// Prolog atom for a kind: lowercase, '_' -> '-', quoted when needed.
std::string prolog_kind_atom(const FunctionKind& kind);

/// Lightweight structural check of emitter output: balanced brackets and,
/// for Prolog, every clause terminated by '.'. Returns an error description
/// or an empty string.
std::string check_well_formed(EmitterKind kind, const std::string& text);

} // namespace pinmux
