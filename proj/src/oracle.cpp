#include "pinmux/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pinmux::oracle {

namespace {

bool pin_serves(const Pin& pin, const FunctionKind& kind, const std::vector<EligibilityRule>& rules)
{
    for (const auto& e : pin.entries()) {
        if (e.kind != kind)
            continue;
        bool ok = true;
        for (const auto& r : rules)
            ok = ok && r.admits(pin, e, kind);
        if (ok)
            return true;
    }
    return false;
}

std::size_t count_multisets(int size, int kinds, int min_kind)
{
    if (size == 0)
        return 1;
    std::size_t total = 0;
    for (int k = min_kind; k < kinds; ++k)
        total += count_multisets(size - 1, kinds, k);
    return total;
}

} // namespace

OracleResult brute_force_solve(const Board& board, const Request& request, const std::vector<EligibilityRule>& rules)
{
    const std::size_t n = board.size();
    const std::size_t l = request.size();
    if (n > kMaxPins || l > kMaxRequest)
        throw CapacityError("oracle instance too large: " + std::to_string(n) + " pins, " + std::to_string(l) + " slots");

    std::vector<std::size_t> perm(l);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return request.slots()[a].name() < request.slots()[b].name(); });

    OracleResult result;
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> best_rep; // pin set -> canonical-order map

    std::size_t total = 1;
    for (std::size_t i = 0; i < l; ++i)
        total *= n;
    if (n == 0 && l > 0)
        total = 0;

    PinMap map(l, 0);
    for (std::size_t code = 0; code < total; ++code) {
        auto c = code;
        for (std::size_t i = l; i-- > 0;) {
            map[i] = c % n;
            c /= n;
        }
        std::vector<std::size_t> sorted = map;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            continue;
        bool ok = true;
        for (std::size_t i = 0; i < l && ok; ++i)
            ok = pin_serves(board.pins()[map[i]], request.slots()[i], rules);
        if (!ok)
            continue;

        result.labeled.push_back(map);
        int cost = 0;
        for (auto p : map)
            cost += board.pins()[p].cost();
        if (!result.min_cost || cost < *result.min_cost)
            result.min_cost = cost;

        std::vector<std::size_t> canon(l);
        for (std::size_t i = 0; i < l; ++i)
            canon[i] = map[perm[i]];
        auto [it, inserted] = best_rep.try_emplace(sorted, canon);
        if (!inserted && canon < it->second)
            it->second = canon;
    }

    std::vector<std::vector<std::size_t>> reps;
    for (auto& [set, canon] : best_rep)
        reps.push_back(canon);
    std::sort(reps.begin(), reps.end());
    for (const auto& canon : reps) {
        PinMap m(l);
        for (std::size_t i = 0; i < l; ++i)
            m[perm[i]] = canon[i];
        result.pin_set_reps.push_back(std::move(m));
    }
    result.labeled_count = result.labeled.size();
    result.pin_set_count = result.pin_set_reps.size();
    return result;
}

BigCount brute_force_space(int n, int m, int max_len)
{
    if (n < 0 || n > 6 || m < 1 || m > 4)
        throw CapacityError("brute_force_space supports n <= 6 and 1 <= m <= 4");
    BigCount total = 0;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
        int k = __builtin_popcount(mask);
        if (k <= max_len)
            total += count_multisets(k, m, 0);
    }
    return total;
}

std::set<Realization> brute_force_realizations(const Board& board, std::size_t max_len)
{
    const std::size_t n = board.size();
    if (n > kMaxPins)
        throw CapacityError("oracle instance too large");
    std::set<Realization> out;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
        std::vector<std::size_t> pins;
        for (std::size_t p = 0; p < n; ++p)
            if (mask >> p & 1U)
                pins.push_back(p);
        if (pins.size() > max_len)
            continue;
        int cost = 0;
        for (auto p : pins)
            cost += board.pins()[p].cost();
        std::vector<std::size_t> choice(pins.size(), 0);
        for (;;) {
            Realization r{{}, pins, cost};
            for (std::size_t i = 0; i < pins.size(); ++i)
                r.kinds.push_back(board.pins()[pins[i]].entries()[choice[i]].kind.name());
            std::sort(r.kinds.begin(), r.kinds.end());
            out.insert(std::move(r));
            std::size_t i = 0;
            while (i < pins.size() && ++choice[i] == board.pins()[pins[i]].entries().size())
                choice[i++] = 0;
            if (i == pins.size())
                break;
        }
    }
    return out;
}

BigCount brute_force_board_space(const Board& board)
{
    const std::size_t n = board.size();
    if (n > kMaxPins)
        throw CapacityError("oracle instance too large");
    BigCount total = 0;
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
        std::vector<std::size_t> pins;
        for (std::size_t p = 0; p < n; ++p)
            if (mask >> p & 1U)
                pins.push_back(p);
        std::vector<std::size_t> choice(pins.size(), 0);
        for (;;) {
            ++total;
            std::size_t i = 0;
            while (i < pins.size() && ++choice[i] == board.pins()[pins[i]].entries().size())
                choice[i++] = 0;
            if (i == pins.size())
                break;
        }
    }
    return total;
}

Assignment to_assignment(const Board& board, const Request& request, const PinMap& map,
                         const std::vector<EligibilityRule>& rules)
{
    Assignment a;
    a.board_fingerprint = board.fingerprint();
    for (std::size_t i = 0; i < map.size(); ++i) {
        const Pin& pin = board.pins()[map[i]];
        const auto& kind = request.slots()[i];
        std::optional<std::string> detail;
        for (const auto& e : pin.entries()) {
            if (e.kind != kind)
                continue;
            bool ok = true;
            for (const auto& r : rules)
                ok = ok && r.admits(pin, e, kind);
            if (ok && (!detail || e.detail < *detail))
                detail = e.detail;
        }
        a.bindings.push_back({i, kind, pin.id(), detail.value_or(std::string(kNoDetail))});
        a.total_cost += pin.cost();
    }
    return a;
}

} // namespace pinmux::oracle
