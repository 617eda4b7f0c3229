#pragma once

// Property checks shared by the unit suites and the acceptance runner.
// Each check returns an empty string on success, otherwise a description.

#include "pinmux/configops.hpp"
#include "pinmux/oracle.hpp"
#include "support.hpp"

#include <numeric>
#include <sstream>

namespace pinmux::fixtures {

struct Instance {
    Board board;
    Request request;
    std::vector<EligibilityRule> rules;
};

/// Seeded instance family: |N| <= 7, <= 4 entries per pin, l <= 5; every
/// third instance enables the ICU channel rule.
inline std::vector<Instance> instance_family(std::uint32_t seed, std::size_t count)
{
    std::mt19937 rng(seed);
    std::vector<Instance> out;
    for (std::size_t i = 0; i < count; ++i) {
        Instance inst{random_board(rng, 7, 4), random_request(rng, 5), {}};
        if (i % 3 == 2)
            inst.rules.push_back(icu_channel_rule());
        out.push_back(std::move(inst));
    }
    return out;
}

inline std::string describe(const Instance& inst)
{
    std::string text = serialize_board(inst.board) + "request: " + inst.request.to_string();
    if (!inst.rules.empty())
        text += " (icu-ch12)";
    return text;
}

inline SolveOptions options_for(const Instance& inst, Semantics semantics = Semantics::UniquePinSets,
                                BestStrategy strategy = BestStrategy::MinCostMatching)
{
    SolveOptions opts;
    opts.semantics = semantics;
    opts.rules = inst.rules;
    opts.strategy = strategy;
    return opts;
}

inline std::set<std::string> keys(const std::vector<Assignment>& all)
{
    std::set<std::string> out;
    for (const auto& a : all)
        out.insert(binding_key(a));
    return out;
}

/// Labeled and pin-set enumeration, counts, first and best against brute force.
inline std::string check_oracle_equivalence(const Instance& inst)
{
    const auto& [board, request, rules] = inst;
    auto ref = oracle::brute_force_solve(board, request, rules);

    std::vector<Assignment> ref_labeled, ref_sets;
    for (const auto& m : ref.labeled)
        ref_labeled.push_back(oracle::to_assignment(board, request, m, rules));
    for (const auto& m : ref.pin_set_reps)
        ref_sets.push_back(oracle::to_assignment(board, request, m, rules));

    auto labeled = enumerate_all(board, request, options_for(inst, Semantics::Labeled));
    if (keys(labeled) != keys(ref_labeled) || labeled.size() != ref_labeled.size())
        return "labeled enumeration differs from oracle (" + std::to_string(labeled.size()) + " vs " +
               std::to_string(ref_labeled.size()) + ")";
    auto sets = enumerate_all(board, request, options_for(inst));
    if (keys(sets) != keys(ref_sets) || sets.size() != ref_sets.size())
        return "pin-set enumeration differs from oracle";
    for (const auto& a : labeled)
        if (auto err = validate_assignment(board, request, a, rules); !err.empty())
            return "invalid enumerated assignment: " + err;

    auto counts = count_solutions(board, request, options_for(inst));
    if (counts.labeled != ref.labeled_count || counts.pin_sets != ref.pin_set_count)
        return "count_solutions differs from oracle";

    auto first = find_feasible(board, request, options_for(inst));
    if (first.feasible() != ref.min_cost.has_value())
        return "find_feasible feasibility differs from oracle";
    if (first.feasible() && !keys(ref_labeled).count(binding_key(first.assignment())))
        return "find_feasible result is not an oracle solution";
    if (first.feasible() && !(first.assignment() == sets.front()))
        return "find_feasible is not the first enumerated solution";

    auto best = find_best(board, request, options_for(inst));
    if (best.feasible() != ref.min_cost.has_value())
        return "find_best feasibility differs from oracle";
    if (best.feasible() && best.assignment().total_cost != *ref.min_cost)
        return "find_best cost " + std::to_string(best.assignment().total_cost) + " != oracle minimum " +
               std::to_string(*ref.min_cost);
    return {};
}

/// All three best strategies return the same (cost, assignment).
inline std::string check_strategy_agreement(const Instance& inst)
{
    auto a = find_best(inst.board, inst.request, options_for(inst, Semantics::UniquePinSets, BestStrategy::MinCostMatching));
    auto b = find_best(inst.board, inst.request, options_for(inst, Semantics::UniquePinSets, BestStrategy::CostThreshold));
    auto c = find_best(inst.board, inst.request, options_for(inst, Semantics::UniquePinSets, BestStrategy::EnumerateMin));
    if (a.feasible() != b.feasible() || a.feasible() != c.feasible())
        return "strategies disagree on feasibility";
    if (a.feasible() && !(a.assignment() == b.assignment() && a.assignment() == c.assignment()))
        return "strategies disagree: " + binding_key(a.assignment()) + " / " + binding_key(b.assignment()) + " / " +
               binding_key(c.assignment());
    return {};
}

inline std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

/// Uniform-kind requests: labeled == k! * pin sets.
inline std::string check_semantics_ratio(const Board& board, const FunctionKind& kind, std::size_t k)
{
    Request request(std::vector<FunctionKind>(k, kind));
    auto counts = count_solutions(board, request);
    SolveOptions labeled;
    labeled.semantics = Semantics::Labeled;
    auto maps = enumerate_all(board, request, labeled).size();
    auto sets = enumerate_all(board, request).size();
    if (maps != factorial(k) * sets)
        return "enumeration ratio broken for " + request.to_string();
    if (counts.labeled != counts.pin_sets * factorial(k))
        return "count ratio broken for " + request.to_string();
    return {};
}

/// Best cost and used pin set survive any slot permutation.
inline std::string check_permutation_invariance(const Instance& inst, std::mt19937& rng)
{
    auto base = find_best(inst.board, inst.request, options_for(inst));
    for (int t = 0; t < 3; ++t) {
        auto slots = inst.request.slots();
        std::shuffle(slots.begin(), slots.end(), rng);
        auto other = find_best(inst.board, Request(slots), options_for(inst));
        if (other.feasible() != base.feasible())
            return "permutation changed feasibility";
        if (base.feasible() && (other.assignment().total_cost != base.assignment().total_cost ||
                                pin_set(other.assignment()) != pin_set(base.assignment())))
            return "permutation changed best cost or pins";
    }
    return {};
}

/// best <= first <= sum of the l largest pin costs.
inline std::string check_dominance(const Instance& inst)
{
    auto first = find_feasible(inst.board, inst.request, options_for(inst));
    if (!first.feasible())
        return {};
    auto best = find_best(inst.board, inst.request, options_for(inst));
    std::vector<int> costs;
    for (const auto& p : inst.board.pins())
        costs.push_back(p.cost());
    std::sort(costs.rbegin(), costs.rend());
    int bound = std::accumulate(costs.begin(), costs.begin() + static_cast<long>(inst.request.size()), 0);
    if (!best.feasible() || best.assignment().total_cost > first.assignment().total_cost ||
        first.assignment().total_cost > bound)
        return "dominance chain broken";
    return {};
}

/// Extra pins and dropped rules never lose feasibility.
inline std::string check_monotonicity(const Instance& inst, std::mt19937& rng)
{
    if (!find_feasible(inst.board, inst.request, options_for(inst)).feasible())
        return {};
    auto pins = inst.board.pins();
    auto extra = random_board(rng, 1, 4).pins().front();
    pins.emplace_back("EXTRA", extra.entries());
    std::shuffle(pins.begin(), pins.end(), rng);
    Board bigger(inst.board.name(), pins);
    if (!find_feasible(bigger, inst.request, options_for(inst)).feasible())
        return "adding a pin lost feasibility";
    if (!find_feasible(inst.board, inst.request).feasible())
        return "removing rules lost feasibility";
    return {};
}

/// Infeasible outcomes carry a valid witness unless the search was exhausted.
inline std::string check_witness(const Instance& inst)
{
    auto out = find_feasible(inst.board, inst.request, options_for(inst));
    if (out.feasible())
        return {};
    const auto& inf = out.infeasible();
    if (inf.reason == Infeasible::Reason::ExhaustedSearch)
        return inf.witness ? "exhausted search should not carry a witness" : "";
    if (!inf.witness)
        return "missing witness";
    if (!witness_valid(inst.board, inst.request, inst.rules, *inf.witness))
        return "witness fails Hall check";
    return {};
}

/// merge laws, diff round trip, extend with empty base, canonicalize idempotence.
inline std::string check_configops(const Instance& inst, const Instance& other, std::mt19937& rng)
{
    const auto& a = inst.request;
    const auto& b = other.request;
    auto c = random_request(rng);
    if (!(merge_requests(a, b) == merge_requests(b, a)))
        return "merge not commutative";
    if (!(merge_requests(merge_requests(a, b), c) == merge_requests(a, merge_requests(b, c))))
        return "merge not associative";
    if (merge_requests(a, b).size() != a.size() + b.size())
        return "merge length not additive";
    if (!(canonicalize(canonicalize(a)) == canonicalize(a)))
        return "canonicalize not idempotent";

    Assignment empty;
    empty.board_fingerprint = inst.board.fingerprint();
    auto ext = extend_assignment(inst.board, empty, a, options_for(inst));
    auto best = find_best(inst.board, a, options_for(inst));
    if (ext.feasible() != best.feasible() || (best.feasible() && !(ext.assignment() == best.assignment())))
        return "extend with empty base differs from find_best";

    SolveOptions labeled = options_for(inst, Semantics::Labeled);
    auto pool = enumerate_all(inst.board, a, labeled);
    auto more = enumerate_all(inst.board, c, labeled);
    pool.insert(pool.end(), more.begin(), more.end());
    pool.push_back(empty);
    for (std::size_t i = 0; i < pool.size() && i < 5; ++i)
        for (std::size_t j = pool.size() > 5 ? pool.size() - 5 : 0; j < pool.size(); ++j)
            if (!(apply_diff(pool[i], diff_assignments(pool[i], pool[j])) == pool[j]))
                return "diff round trip failed";
    return {};
}

} // namespace pinmux::fixtures
