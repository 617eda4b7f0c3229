#include "pinmux/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <unordered_set>

namespace pinmux {

namespace {

constexpr int kNoPin = -1;

__extension__ using Wide = unsigned __int128;

// Board and request flattened into index form. Slots are in canonical order.
struct Instance {
    const Board* board = nullptr;
    const Request* request = nullptr;
    std::size_t slots = 0;
    std::size_t pins = 0;
    std::vector<FunctionKind> kinds;                      // distinct requested kinds, sorted
    std::vector<std::size_t> slot_kind;                   // canonical slot -> kind index
    std::vector<std::vector<const std::string*>> detail;  // [kind][pin] smallest eligible detail, or null
    std::vector<int> cost;                                // per pin

    bool eligible(std::size_t slot, std::size_t pin) const { return detail[slot_kind[slot]][pin] != nullptr; }
};

bool entry_admitted(const Pin& pin, const FunctionEntry& entry, const FunctionKind& kind,
                    const std::vector<EligibilityRule>& rules)
{
    if (entry.kind != kind)
        return false;
    return std::all_of(rules.begin(), rules.end(), [&](const EligibilityRule& r) { return r.admits(pin, entry, kind); });
}

Instance make_instance(const Board& board, const Request& request, const std::vector<EligibilityRule>& rules)
{
    Instance in;
    in.board = &board;
    in.request = &request;
    in.slots = request.size();
    in.pins = board.size();

    std::set<FunctionKind> kinds(request.canonical().begin(), request.canonical().end());
    in.kinds.assign(kinds.begin(), kinds.end());
    for (const auto& k : request.canonical())
        in.slot_kind.push_back(static_cast<std::size_t>(std::lower_bound(in.kinds.begin(), in.kinds.end(), k) -
                                                        in.kinds.begin()));

    in.detail.assign(in.kinds.size(), std::vector<const std::string*>(in.pins, nullptr));
    for (std::size_t k = 0; k < in.kinds.size(); ++k) {
        for (std::size_t p = 0; p < in.pins; ++p) {
            const Pin& pin = board.pins()[p];
            for (const auto& e : pin.entries()) {
                if (!entry_admitted(pin, e, in.kinds[k], rules))
                    continue;
                auto& best = in.detail[k][p];
                if (!best || e.detail < *best)
                    best = &e.detail;
            }
        }
    }
    for (const auto& pin : board.pins())
        in.cost.push_back(pin.cost());
    return in;
}

// Kuhn's augmenting-path matching of slots [first, slots) into pins not in `used`.
class Matcher {
public:
    explicit Matcher(const Instance& in) : in_(in), pin_match_(in.pins, kNoPin), seen_(in.pins, 0) {}

    std::size_t run(std::size_t first, const std::vector<char>& used)
    {
        std::fill(pin_match_.begin(), pin_match_.end(), kNoPin);
        std::size_t matched = 0;
        for (std::size_t s = first; s < in_.slots; ++s) {
            ++stamp_;
            if (augment(s, used))
                ++matched;
        }
        return matched;
    }

    const std::vector<int>& pin_match() const { return pin_match_; }

private:
    bool augment(std::size_t slot, const std::vector<char>& used)
    {
        for (std::size_t p = 0; p < in_.pins; ++p) {
            if (used[p] || !in_.eligible(slot, p) || seen_[p] == stamp_)
                continue;
            seen_[p] = stamp_;
            if (pin_match_[p] == kNoPin || augment(static_cast<std::size_t>(pin_match_[p]), used)) {
                pin_match_[p] = static_cast<int>(slot);
                return true;
            }
        }
        return false;
    }

    const Instance& in_;
    std::vector<int> pin_match_;
    std::vector<unsigned> seen_;
    unsigned stamp_ = 0;
};

std::vector<std::string> pins_for_kinds(const Instance& in, const std::vector<std::size_t>& kind_ids)
{
    std::vector<std::string> pins;
    for (std::size_t p = 0; p < in.pins; ++p)
        for (auto k : kind_ids)
            if (in.detail[k][p]) {
                pins.push_back(in.board->pins()[p].id());
                break;
            }
    return pins;
}

std::string describe(const HallWitness& w)
{
    std::string kinds;
    for (const auto& k : w.kinds)
        kinds += (kinds.empty() ? "" : ", ") + k.name();
    std::string pins;
    for (const auto& p : w.pins)
        pins += (pins.empty() ? "" : ", ") + p;
    if (w.pins.empty())
        return std::to_string(w.multiplicity) + " slot(s) of {" + kinds + "} but no eligible pin";
    return std::to_string(w.multiplicity) + " slot(s) of {" + kinds + "} but only " + std::to_string(w.pins.size()) +
           " eligible pin(s): " + pins;
}

// Returns a Hall-condition violation if the request cannot be matched.
std::optional<Infeasible> analyze(const Instance& in)
{
    for (std::size_t k = 0; k < in.kinds.size(); ++k) {
        bool any = std::any_of(in.detail[k].begin(), in.detail[k].end(), [](auto* d) { return d != nullptr; });
        if (!any) {
            HallWitness w{{in.kinds[k]}, in.request->multiplicity(in.kinds[k]), {}};
            Infeasible inf{Infeasible::Reason::KindUnsupported, "", std::move(w)};
            inf.message = "no eligible pin offers " + in.kinds[k].name();
            return inf;
        }
    }

    Matcher matcher(in);
    std::vector<char> none(in.pins, 0);
    if (matcher.run(0, none) == in.slots)
        return std::nullopt;

    // Alternating BFS from one unmatched slot; the kinds reached form a
    // violating set (König).
    const auto& pin_match = matcher.pin_match();
    std::vector<char> slot_matched(in.slots, 0);
    for (auto s : pin_match)
        if (s != kNoPin)
            slot_matched[static_cast<std::size_t>(s)] = 1;
    std::size_t root = static_cast<std::size_t>(std::find(slot_matched.begin(), slot_matched.end(), 0) - slot_matched.begin());

    std::vector<char> slot_seen(in.slots, 0), pin_seen(in.pins, 0);
    std::vector<std::size_t> queue{root};
    slot_seen[root] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        auto s = queue[qi];
        for (std::size_t p = 0; p < in.pins; ++p) {
            if (!in.eligible(s, p) || pin_seen[p])
                continue;
            pin_seen[p] = 1;
            auto next = pin_match[p];
            if (next != kNoPin && !slot_seen[static_cast<std::size_t>(next)]) {
                slot_seen[static_cast<std::size_t>(next)] = 1;
                queue.push_back(static_cast<std::size_t>(next));
            }
        }
    }

    std::set<std::size_t> kind_set;
    for (auto s : queue)
        kind_set.insert(in.slot_kind[s]);
    std::vector<std::size_t> kind_ids(kind_set.begin(), kind_set.end());

    HallWitness w;
    for (auto k : kind_ids) {
        w.kinds.push_back(in.kinds[k]);
        w.multiplicity += in.request->multiplicity(in.kinds[k]);
    }
    w.pins = pins_for_kinds(in, kind_ids);
    Infeasible inf{Infeasible::Reason::Pigeonhole, describe(w), std::move(w)};
    return inf;
}

Assignment to_assignment(const Instance& in, const std::vector<int>& bind)
{
    Assignment a;
    a.board_fingerprint = in.board->fingerprint();
    for (std::size_t i = 0; i < in.slots; ++i) {
        auto p = static_cast<std::size_t>(bind[i]);
        a.bindings.push_back(
            {in.request->slot_of(i), in.request->canonical()[i], in.board->pins()[p].id(), *in.detail[in.slot_kind[i]][p]});
        a.total_cost += in.cost[p];
    }
    std::sort(a.bindings.begin(), a.bindings.end(), [](const Binding& x, const Binding& y) { return x.slot < y.slot; });
    return a;
}

// Depth-first search over canonical slots, pins tried in declaration order,
// so solutions are produced in lexicographic order. Every partial binding is
// extended only if the remaining slots still admit a matching into the
// remaining pins, so the search never enters a dead subtree.
class Search {
public:
    using Visit = std::function<bool(const std::vector<int>&, int)>;

    Search(const Instance& in, bool break_symmetry, std::optional<int> cost_bound)
        : in_(in), break_symmetry_(break_symmetry), bound_(cost_bound), matcher_(in), used_(in.pins, 0),
          bind_(in.slots, kNoPin), by_cost_(in.pins)
    {
        std::iota(by_cost_.begin(), by_cost_.end(), std::size_t{0});
        std::stable_sort(by_cost_.begin(), by_cost_.end(),
                         [&](std::size_t a, std::size_t b) { return in.cost[a] < in.cost[b]; });
    }

    // Returns false if the visitor stopped the search.
    bool run(const Visit& visit)
    {
        visit_ = &visit;
        return descend(0, 0);
    }

private:
    bool descend(std::size_t depth, int cost)
    {
        if (depth == in_.slots)
            return (*visit_)(bind_, cost);
        std::size_t start = 0;
        if (break_symmetry_ && depth > 0 && in_.slot_kind[depth] == in_.slot_kind[depth - 1])
            start = static_cast<std::size_t>(bind_[depth - 1]) + 1;
        for (std::size_t p = start; p < in_.pins; ++p) {
            if (used_[p] || !in_.eligible(depth, p))
                continue;
            used_[p] = 1;
            bind_[depth] = static_cast<int>(p);
            int next_cost = cost + in_.cost[p];
            bool keep_going = true;
            if (viable(depth + 1, next_cost))
                keep_going = descend(depth + 1, next_cost);
            used_[p] = 0;
            bind_[depth] = kNoPin;
            if (!keep_going)
                return false;
        }
        return true;
    }

    bool viable(std::size_t depth, int cost)
    {
        auto remaining = in_.slots - depth;
        if (bound_) {
            int lower = cost;
            std::size_t taken = 0;
            for (auto p : by_cost_) {
                if (taken == remaining)
                    break;
                if (!used_[p]) {
                    lower += in_.cost[p];
                    ++taken;
                }
            }
            if (lower > *bound_)
                return false;
        }
        if (remaining == 0)
            return true;
        if (!supply_ok(depth))
            return false;
        return matcher_.run(depth, used_) == remaining;
    }

    // Per-kind check: remaining demand of each kind fits its unused supply.
    bool supply_ok(std::size_t depth)
    {
        demand_.assign(in_.kinds.size(), 0);
        for (std::size_t s = depth; s < in_.slots; ++s)
            ++demand_[in_.slot_kind[s]];
        for (std::size_t k = 0; k < in_.kinds.size(); ++k) {
            if (demand_[k] == 0)
                continue;
            std::size_t supply = 0;
            for (std::size_t p = 0; p < in_.pins && supply < demand_[k]; ++p)
                if (!used_[p] && in_.detail[k][p])
                    ++supply;
            if (supply < demand_[k])
                return false;
        }
        return true;
    }

    const Instance& in_;
    bool break_symmetry_;
    std::optional<int> bound_;
    Matcher matcher_;
    std::vector<char> used_;
    std::vector<int> bind_;
    std::vector<std::size_t> by_cost_;
    std::vector<std::size_t> demand_;
    const Visit* visit_ = nullptr;
};

// Enumerates solutions under `semantics`, passing canonical bindings.
void search_solutions(const Instance& in, Semantics semantics, const Search::Visit& visit)
{
    if (semantics == Semantics::Labeled) {
        Search(in, false, std::nullopt).run(visit);
        return;
    }
    std::unordered_set<std::string> seen;
    std::string key(in.pins, '0');
    Search(in, true, std::nullopt).run([&](const std::vector<int>& bind, int cost) {
        std::fill(key.begin(), key.end(), '0');
        for (auto p : bind)
            key[static_cast<std::size_t>(p)] = '1';
        if (!seen.insert(key).second)
            return true;
        return visit(bind, cost);
    });
}

std::optional<std::vector<int>> first_solution(const Instance& in, std::optional<int> bound)
{
    std::optional<std::vector<int>> found;
    Search(in, false, bound).run([&](const std::vector<int>& bind, int) {
        found = bind;
        return false;
    });
    return found;
}

// Min-cost assignment of slots [first, slots) into unused pins by shortest
// augmenting paths with potentials. Returns nullopt if no complete matching.
std::optional<long long> min_cost_completion(const Instance& in, std::size_t first, const std::vector<char>& used)
{
    constexpr long long kForbidden = 1'000'000'000LL;
    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

    std::vector<std::size_t> cols;
    for (std::size_t p = 0; p < in.pins; ++p)
        if (!used[p])
            cols.push_back(p);
    const std::size_t n = in.slots - first;
    const std::size_t m = cols.size();
    if (n == 0)
        return 0;
    if (n > m)
        return std::nullopt;

    auto weight = [&](std::size_t row, std::size_t col) -> long long {
        auto slot = first + row - 1;
        auto pin = cols[col - 1];
        return in.eligible(slot, pin) ? in.cost[pin] : kForbidden;
    };

    // 1-based rows/cols; column 0 is the virtual source.
    std::vector<long long> u(n + 1, 0), v(m + 1, 0);
    std::vector<std::size_t> owner(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        owner[0] = i;
        std::size_t j0 = 0;
        std::vector<long long> minv(m + 1, kInf);
        std::vector<char> done(m + 1, 0);
        do {
            done[j0] = 1;
            std::size_t i0 = owner[j0], j1 = 0;
            long long delta = kInf;
            for (std::size_t j = 1; j <= m; ++j) {
                if (done[j])
                    continue;
                long long cur = weight(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (done[j]) {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (owner[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    long long total = 0;
    for (std::size_t j = 1; j <= m; ++j)
        if (owner[j] != 0)
            total += weight(owner[j], j);
    if (total >= kForbidden)
        return std::nullopt;
    return total;
}

std::vector<int> best_by_matching(const Instance& in)
{
    std::vector<char> used(in.pins, 0);
    auto optimum = min_cost_completion(in, 0, used);
    std::vector<int> bind(in.slots, kNoPin);
    long long spent = 0;
    // Fix slots one at a time to the first pin that keeps the optimum reachable.
    for (std::size_t s = 0; s < in.slots; ++s) {
        for (std::size_t p = 0; p < in.pins; ++p) {
            if (used[p] || !in.eligible(s, p))
                continue;
            used[p] = 1;
            auto rest = min_cost_completion(in, s + 1, used);
            if (rest && spent + in.cost[p] + *rest == *optimum) {
                bind[s] = static_cast<int>(p);
                spent += in.cost[p];
                break;
            }
            used[p] = 0;
        }
    }
    return bind;
}

std::optional<std::vector<int>> best_by_threshold(const Instance& in)
{
    auto [lo, hi] = std::minmax_element(in.cost.begin(), in.cost.end());
    const int l = static_cast<int>(in.slots);
    for (int bound = l * *lo; bound <= l * *hi; ++bound)
        if (auto found = first_solution(in, bound))
            return found;
    return std::nullopt;
}

std::vector<int> best_by_enumeration(const Instance& in)
{
    std::vector<int> best;
    int best_cost = std::numeric_limits<int>::max();
    search_solutions(in, Semantics::UniquePinSets, [&](const std::vector<int>& bind, int cost) {
        if (cost < best_cost) {
            best_cost = cost;
            best = bind;
        }
        return true;
    });
    return best;
}

Assignment empty_assignment(const Board& board)
{
    Assignment a;
    a.board_fingerprint = board.fingerprint();
    return a;
}

std::vector<std::string> length_warnings(const Board& board, const Request& request)
{
    if (!request.empty() && request.size() == board.size())
        return {"request length " + std::to_string(request.size()) +
                " uses every pin of the board; the domain model expects configurations shorter than the pin count"};
    return {};
}

} // namespace

std::vector<std::string> Assignment::used_pins() const
{
    std::vector<std::string> pins;
    for (const auto& b : bindings)
        pins.push_back(b.pin);
    return pins;
}

std::string to_string(Infeasible::Reason reason)
{
    switch (reason) {
    case Infeasible::Reason::KindUnsupported:
        return "kind-unsupported";
    case Infeasible::Reason::Pigeonhole:
        return "pigeonhole";
    case Infeasible::Reason::ExhaustedSearch:
        return "exhausted-search";
    }
    return "unknown";
}

EligibilityRule icu_channel_rule()
{
    static const std::regex channel(R"(TIM[0-9]+_CH([0-9]+))", std::regex::icase);
    return {"icu-ch12", [](const Pin&, const FunctionEntry& entry, const FunctionKind& kind) {
                if (kind.name() != "ICU")
                    return true;
                std::smatch m;
                if (!std::regex_match(entry.detail, m, channel))
                    return false;
                auto ch = m[1].str();
                ch.erase(0, std::min(ch.find_first_not_of('0'), ch.size()));
                return ch == "1" || ch == "2";
            }};
}

SolveOutcome find_feasible(const Board& board, const Request& request, const SolveOptions& options)
{
    SolveOutcome out{empty_assignment(board), length_warnings(board, request)};
    if (request.empty())
        return out;
    auto in = make_instance(board, request, options.rules);
    if (auto inf = analyze(in)) {
        out.result = std::move(*inf);
        return out;
    }
    if (auto bind = first_solution(in, std::nullopt))
        out.result = to_assignment(in, *bind);
    else
        out.result = Infeasible{Infeasible::Reason::ExhaustedSearch, "search exhausted without a solution", {}};
    return out;
}

void for_each_solution(const Board& board, const Request& request, const SolveOptions& options,
                       const std::function<bool(const Assignment&)>& visit)
{
    if (request.empty()) {
        visit(empty_assignment(board));
        return;
    }
    auto in = make_instance(board, request, options.rules);
    if (analyze(in))
        return;
    search_solutions(in, options.semantics,
                     [&](const std::vector<int>& bind, int) { return visit(to_assignment(in, bind)); });
}

std::vector<Assignment> enumerate_all(const Board& board, const Request& request, const SolveOptions& options)
{
    std::vector<Assignment> all;
    for_each_solution(board, request, options, [&](const Assignment& a) {
        if (all.size() >= options.cap)
            throw CapacityError("enumeration exceeds the cap of " + std::to_string(options.cap) +
                                " solutions; stream the results or raise the cap");
        all.push_back(a);
        return true;
    });
    return all;
}

SolutionCounts count_solutions(const Board& board, const Request& request, const SolveOptions& options)
{
    SolutionCounts counts;
    if (request.empty()) {
        counts.pin_sets = counts.labeled = 1;
        return counts;
    }
    auto in = make_instance(board, request, options.rules);
    if (analyze(in))
        return counts;

    std::vector<std::size_t> useful;
    for (std::size_t p = 0; p < in.pins; ++p)
        for (std::size_t s = 0; s < in.slots; ++s)
            if (in.eligible(s, p)) {
                useful.push_back(p);
                break;
            }

    constexpr std::size_t kMaxDpPins = 20;
    if (useful.size() > kMaxDpPins) {
        search_solutions(in, Semantics::UniquePinSets, [&](const std::vector<int>&, int) {
            ++counts.pin_sets;
            return true;
        });
        search_solutions(in, Semantics::Labeled, [&](const std::vector<int>&, int) {
            ++counts.labeled;
            return true;
        });
        return counts;
    }

    // ways[mask] = number of bindings of the first popcount(mask) canonical
    // slots onto exactly the pins in mask.
    const std::size_t u = useful.size();
    std::vector<Wide> ways(std::size_t{1} << u, 0);
    ways[0] = 1;
    for (std::size_t mask = 1; mask < ways.size(); ++mask) {
        auto placed = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (placed > in.slots)
            continue;
        Wide total = 0;
        for (std::size_t b = 0; b < u; ++b)
            if ((mask >> b) & 1U && in.eligible(placed - 1, useful[b]))
                total += ways[mask ^ (std::size_t{1} << b)];
        ways[mask] = total;
        if (placed == in.slots && total != 0) {
            ++counts.pin_sets;
            BigCount big = static_cast<std::uint64_t>(total >> 64);
            big <<= 64;
            big += static_cast<std::uint64_t>(total);
            counts.labeled += big;
        }
    }
    return counts;
}

SolveOutcome find_best(const Board& board, const Request& request, const SolveOptions& options)
{
    SolveOutcome out{empty_assignment(board), length_warnings(board, request)};
    if (request.empty())
        return out;
    auto in = make_instance(board, request, options.rules);
    if (auto inf = analyze(in)) {
        out.result = std::move(*inf);
        return out;
    }
    std::optional<std::vector<int>> bind;
    switch (options.strategy) {
    case BestStrategy::MinCostMatching:
        bind = best_by_matching(in);
        break;
    case BestStrategy::CostThreshold:
        bind = best_by_threshold(in);
        break;
    case BestStrategy::EnumerateMin:
        bind = best_by_enumeration(in);
        break;
    }
    if (bind && !bind->empty() && std::find(bind->begin(), bind->end(), kNoPin) == bind->end())
        out.result = to_assignment(in, *bind);
    else
        out.result = Infeasible{Infeasible::Reason::ExhaustedSearch, "search exhausted without a solution", {}};
    return out;
}

int assignment_cost(const Board& board, const Assignment& assignment)
{
    int total = 0;
    for (const auto& b : assignment.bindings)
        total += cost_of(board, b.pin);
    return total;
}

std::string validate_assignment(const Board& board, const Request& request, const Assignment& assignment,
                                const std::vector<EligibilityRule>& rules)
{
    if (assignment.size() != request.size())
        return "assignment has " + std::to_string(assignment.size()) + " bindings for a request of length " +
               std::to_string(request.size());
    std::vector<char> slot_seen(request.size(), 0);
    std::vector<char> pin_seen(board.size(), 0);
    int total = 0;
    for (const auto& b : assignment.bindings) {
        if (b.slot >= request.size() || slot_seen[b.slot])
            return "slot " + std::to_string(b.slot) + " is out of range or bound twice";
        slot_seen[b.slot] = 1;
        if (request.slots()[b.slot] != b.kind)
            return "slot " + std::to_string(b.slot) + " is bound as " + b.kind.name() + " but requests " +
                   request.slots()[b.slot].name();
        auto idx = board.index_of(b.pin);
        if (!idx)
            return "unknown pin " + b.pin;
        if (pin_seen[*idx])
            return "pin " + b.pin + " is used twice";
        pin_seen[*idx] = 1;
        const Pin& pin = board.pins()[*idx];
        bool ok = std::any_of(pin.entries().begin(), pin.entries().end(), [&](const FunctionEntry& e) {
            return e.detail == b.detail && entry_admitted(pin, e, b.kind, rules);
        });
        if (!ok)
            return "pin " + b.pin + " has no eligible entry " + b.kind.name() + "/" + b.detail;
        total += pin.cost();
    }
    if (total != assignment.total_cost)
        return "total cost " + std::to_string(assignment.total_cost) + " does not match pin costs " +
               std::to_string(total);
    return {};
}

} // namespace pinmux
