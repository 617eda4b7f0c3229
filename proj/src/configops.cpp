#include "pinmux/configops.hpp"

#include <algorithm>
#include <map>

namespace pinmux {

namespace {

std::vector<FunctionKind> kind_multiset(const Assignment& a)
{
    std::vector<FunctionKind> kinds;
    for (const auto& b : a.bindings)
        kinds.push_back(b.kind);
    std::sort(kinds.begin(), kinds.end());
    return kinds;
}

std::vector<FunctionKind> multiset_minus(const std::vector<FunctionKind>& a, const std::vector<FunctionKind>& b)
{
    std::vector<FunctionKind> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Request merge_requests(const Request& a, const Request& b)
{
    std::vector<FunctionKind> slots = a.slots();
    slots.insert(slots.end(), b.slots().begin(), b.slots().end());
    return canonicalize(Request(std::move(slots)));
}

ConfigDiff diff_assignments(const Assignment& a, const Assignment& b)
{
    if (a.board_fingerprint != b.board_fingerprint)
        throw Error("assignments belong to different boards");

    ConfigDiff diff;
    auto ka = kind_multiset(a);
    auto kb = kind_multiset(b);
    diff.added_slots = multiset_minus(kb, ka);
    diff.removed_slots = multiset_minus(ka, kb);
    diff.cost_delta = b.total_cost - a.total_cost;

    // Keyed by pin id in first-seen order (a's bindings, then b's).
    std::vector<std::string> order;
    std::map<std::string, PinChange> by_pin;
    auto touch = [&](const std::string& pin) -> PinChange& {
        auto [it, inserted] = by_pin.try_emplace(pin, PinChange{pin, std::nullopt, std::nullopt});
        if (inserted)
            order.push_back(pin);
        return it->second;
    };
    for (const auto& bind : a.bindings)
        touch(bind.pin).before = bind;
    for (const auto& bind : b.bindings)
        touch(bind.pin).after = bind;
    for (const auto& pin : order) {
        const auto& change = by_pin.at(pin);
        if (change.before != change.after)
            diff.changes.push_back(change);
    }
    return diff;
}

Assignment apply_diff(const Assignment& a, const ConfigDiff& diff)
{
    Assignment out = a;
    for (const auto& change : diff.changes) {
        if (change.before) {
            auto it = std::find(out.bindings.begin(), out.bindings.end(), *change.before);
            if (it == out.bindings.end())
                throw Error("diff does not apply: pin " + change.pin + " is not bound as expected");
            out.bindings.erase(it);
        }
    }
    for (const auto& change : diff.changes)
        if (change.after)
            out.bindings.push_back(*change.after);
    std::sort(out.bindings.begin(), out.bindings.end(),
              [](const Binding& x, const Binding& y) { return x.slot < y.slot; });
    out.total_cost += diff.cost_delta;
    return out;
}

SolveOutcome extend_assignment(const Board& board, const Assignment& base, const Request& extra,
                               const SolveOptions& options)
{
    if (base.board_fingerprint != board.fingerprint())
        throw Error("base assignment belongs to a different board");

    std::vector<char> taken(board.size(), 0);
    for (const auto& b : base.bindings) {
        auto idx = board.index_of(b.pin);
        if (!idx)
            throw LookupError("base assignment uses unknown pin " + b.pin);
        if (taken[*idx])
            throw Error("base assignment uses pin " + b.pin + " twice");
        taken[*idx] = 1;
    }

    std::vector<Pin> free_pins;
    for (std::size_t i = 0; i < board.size(); ++i)
        if (!taken[i])
            free_pins.push_back(board.pins()[i]);
    Board residual(board.name(), std::move(free_pins));

    auto outcome = find_best(residual, extra, options);
    if (!outcome.feasible())
        return outcome;

    Assignment merged = base;
    for (auto b : outcome.assignment().bindings) {
        b.slot += base.size();
        merged.bindings.push_back(std::move(b));
    }
    merged.total_cost = base.total_cost + outcome.assignment().total_cost;
    merged.board_fingerprint = board.fingerprint();
    outcome.warnings.clear();
    if (merged.size() == board.size())
        outcome.warnings.push_back("extended assignment uses every pin of the board");
    outcome.result = std::move(merged);
    return outcome;
}

} // namespace pinmux
