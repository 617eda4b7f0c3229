#include "pinmux/configops.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace pinmux;

namespace {

Assignment bind(const Board& board, std::vector<std::pair<std::string, std::string>> slots)
{
    Assignment a;
    a.board_fingerprint = board.fingerprint();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        FunctionKind kind(slots[i].second);
        const Pin* pin = board.find(slots[i].first);
        std::string detail;
        for (const auto& e : pin->entries())
            if (e.kind == kind && (detail.empty() || e.detail < detail))
                detail = e.detail;
        a.bindings.push_back({i, kind, pin->id(), detail});
        a.total_cost += pin->cost();
    }
    return a;
}

} // namespace

TEST(MergeRequests, Examples)
{
    auto analog = parse_request("analog");
    EXPECT_EQ(merge_requests(analog, analog), parse_request("analog,analog"));
    auto r = parse_request("icu,analog,pwm");
    EXPECT_EQ(merge_requests(r, Request{}), canonicalize(r));
    EXPECT_EQ(merge_requests(parse_request("icu"), analog), parse_request("analog,icu"));
}

TEST(MergeRequests, Laws)
{
    std::mt19937 rng(12);
    for (int i = 0; i < 300; ++i) {
        auto a = fixtures::random_request(rng), b = fixtures::random_request(rng), c = fixtures::random_request(rng);
        EXPECT_EQ(merge_requests(a, b), merge_requests(b, a));
        EXPECT_EQ(merge_requests(merge_requests(a, b), c), merge_requests(a, merge_requests(b, c)));
        EXPECT_EQ(merge_requests(a, b).size(), a.size() + b.size());
    }
}

TEST(DiffAssignments, Reflexive)
{
    auto board = fixtures::pa1_pa2();
    auto x = bind(board, {{"PA1", "ANALOG"}, {"PA2", "SERIAL_TX"}});
    auto d = diff_assignments(x, x);
    EXPECT_TRUE(d.empty());
    EXPECT_EQ(d.cost_delta, 0);
}

TEST(DiffAssignments, Rebinding)
{
    auto board = fixtures::pa1_pa2();
    auto a = bind(board, {{"PA1", "ANALOG"}});
    auto b = bind(board, {{"PA2", "ANALOG"}});
    auto d = diff_assignments(a, b);
    EXPECT_EQ(d.cost_delta, 1);
    EXPECT_TRUE(d.added_slots.empty());
    EXPECT_TRUE(d.removed_slots.empty());
    ASSERT_EQ(d.changes.size(), 2u);
    EXPECT_EQ(d.changes[0].pin, "PA1");
    EXPECT_TRUE(d.changes[0].before && !d.changes[0].after);
    EXPECT_EQ(d.changes[1].pin, "PA2");
    EXPECT_TRUE(!d.changes[1].before && d.changes[1].after);
    EXPECT_EQ(apply_diff(a, d), b);
}

TEST(DiffAssignments, AddedBinding)
{
    auto board = fixtures::pa1_pa2();
    auto a = bind(board, {{"PA1", "ICU"}});
    auto b = bind(board, {{"PA1", "ICU"}, {"PA2", "SERIAL_TX"}});
    auto d = diff_assignments(a, b);
    EXPECT_EQ(d.cost_delta, 4);
    EXPECT_EQ(d.added_slots, std::vector<FunctionKind>{FunctionKind("SERIAL_TX")});
    ASSERT_EQ(d.changes.size(), 1u);
    EXPECT_EQ(d.changes[0].pin, "PA2");
    EXPECT_EQ(apply_diff(a, d), b);
}

TEST(DiffAssignments, BoardMismatch)
{
    auto a = bind(fixtures::pa1_pa2(), {{"PA1", "ICU"}});
    auto other = parse_board("pin PA1 = ICU/TIM2_CH2\n");
    auto b = bind(other, {{"PA1", "ICU"}});
    EXPECT_THROW(diff_assignments(a, b), Error);
}

TEST(DiffAssignments, RoundTripOnSolverOutput)
{
    std::mt19937 rng(31);
    SolveOptions labeled;
    labeled.semantics = Semantics::Labeled;
    for (int i = 0; i < 150; ++i) {
        auto board = fixtures::random_board(rng);
        std::vector<Assignment> pool;
        for (int j = 0; j < 3; ++j) {
            auto all = enumerate_all(board, fixtures::random_request(rng, 4), labeled);
            pool.insert(pool.end(), all.begin(), all.end());
        }
        for (std::size_t a = 0; a < pool.size() && a < 6; ++a)
            for (std::size_t b = 0; b < pool.size() && b < 6; ++b) {
                auto d = diff_assignments(pool[a], pool[b]);
                EXPECT_EQ(apply_diff(pool[a], d), pool[b]);
                EXPECT_EQ(d.cost_delta, pool[b].total_cost - pool[a].total_cost);
            }
    }
}

TEST(ExtendAssignment, AddsRemainingPin)
{
    auto board = fixtures::pa1_pa2();
    auto base = bind(board, {{"PA1", "ANALOG"}});
    auto out = extend_assignment(board, base, parse_request("serial-tx"));
    ASSERT_TRUE(out.feasible());
    const auto& a = out.assignment();
    EXPECT_EQ(a.total_cost, 7);
    ASSERT_EQ(a.bindings.size(), 2u);
    EXPECT_EQ(a.bindings[0], base.bindings[0]);
    EXPECT_EQ(a.bindings[1].pin, "PA2");
    EXPECT_EQ(a.bindings[1].slot, 1u);
    EXPECT_EQ(a.board_fingerprint, board.fingerprint());
}

TEST(ExtendAssignment, NoPinsLeft)
{
    auto board = fixtures::pa1_pa2();
    auto base = bind(board, {{"PA1", "ANALOG"}, {"PA2", "ANALOG"}});
    EXPECT_FALSE(extend_assignment(board, base, parse_request("icu")).feasible());
}

TEST(ExtendAssignment, EmptyBaseEqualsFindBest)
{
    std::mt19937 rng(77);
    for (int i = 0; i < 200; ++i) {
        auto board = fixtures::random_board(rng);
        auto request = fixtures::random_request(rng);
        Assignment base;
        base.board_fingerprint = board.fingerprint();
        auto ext = extend_assignment(board, base, request);
        auto best = find_best(board, request);
        ASSERT_EQ(ext.feasible(), best.feasible());
        if (best.feasible())
            EXPECT_EQ(ext.assignment(), best.assignment());
    }
}

TEST(ExtendAssignment, MatchesBestAmongSolutionsContainingBase)
{
    std::mt19937 rng(78);
    SolveOptions labeled;
    labeled.semantics = Semantics::Labeled;
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto board = fixtures::random_board(rng);
        auto first = fixtures::random_request(rng, 2);
        auto base_out = find_feasible(board, first);
        if (!base_out.feasible())
            continue;
        auto base = base_out.assignment();
        auto extra = fixtures::random_request(rng, 3);
        auto ext = extend_assignment(board, base, extra);
        auto merged = Request([&] {
            auto s = first.slots();
            s.insert(s.end(), extra.slots().begin(), extra.slots().end());
            return s;
        }());
        auto base_pins = fixtures::pin_set(base);
        std::optional<int> best;
        for (const auto& a : enumerate_all(board, merged, labeled)) {
            auto pins = fixtures::pin_set(a);
            bool keeps = true;
            for (const auto& b : base.bindings)
                keeps = keeps && a.bindings[b.slot].pin == b.pin;
            if (keeps && std::includes(pins.begin(), pins.end(), base_pins.begin(), base_pins.end()))
                best = std::min(best.value_or(a.total_cost), a.total_cost);
        }
        ASSERT_EQ(ext.feasible(), best.has_value()) << serialize_board(board) << merged.to_string();
        if (best) {
            EXPECT_EQ(ext.assignment().total_cost, *best);
            EXPECT_EQ(validate_assignment(board, merged, ext.assignment()), "");
            ++checked;
        }
    }
    EXPECT_GT(checked, 20);
}
