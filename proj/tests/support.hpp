#pragma once

#include "pinmux/board.hpp"
#include "pinmux/request.hpp"
#include "pinmux/solver.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace pinmux::fixtures {

inline constexpr const char* kPa1Pa2Board = "pin PA1 = ANALOG/ADC1_IN1, ICU/TIM2_CH2, ICU/TIM5_CH2\n"
                                            "pin PA2 = ANALOG/ADC1_IN2, SERIAL_TX/UART2_TX, ICU/TIM2_CH3, ICU/TIM5_CH3\n";

inline Board pa1_pa2() { return parse_board(kPa1Pa2Board); }

inline std::string data_path(const std::string& name) { return std::string(PINMUX_DATA_DIR) + "/" + name; }

inline const std::vector<std::string>& kind_pool()
{
    static const std::vector<std::string> pool{"ANALOG", "ICU", "PWM", "SERIAL_TX", "CAN_TX"};
    return pool;
}

/// Random board with 1..max_pins pins and 1..max_entries entries per pin.
/// ICU details vary over timer channels 1..4 so the channel rule matters.
inline Board random_board(std::mt19937& rng, std::size_t max_pins = 7, std::size_t max_entries = 4)
{
    std::uniform_int_distribution<std::size_t> n_pins(1, max_pins), n_entries(1, max_entries);
    std::uniform_int_distribution<std::size_t> kind(0, kind_pool().size() - 1);
    std::uniform_int_distribution<int> timer(1, 5), channel(1, 4), unit(1, 3);
    std::vector<Pin> pins;
    auto count = n_pins(rng);
    for (std::size_t p = 0; p < count; ++p) {
        std::vector<FunctionEntry> entries;
        auto want = n_entries(rng);
        for (std::size_t attempt = 0; entries.size() < want && attempt < 20; ++attempt) {
            FunctionKind k(kind_pool()[kind(rng)]);
            std::string detail;
            if (k.name() == "ICU" || k.name() == "PWM")
                detail = "TIM" + std::to_string(timer(rng)) + "_CH" + std::to_string(channel(rng));
            else
                detail = k.name().substr(0, 3) + std::to_string(unit(rng));
            FunctionEntry e{k, detail};
            if (std::find(entries.begin(), entries.end(), e) == entries.end())
                entries.push_back(e);
        }
        pins.emplace_back("P" + std::to_string(p), std::move(entries));
    }
    return Board(std::nullopt, std::move(pins));
}

inline Request random_request(std::mt19937& rng, std::size_t max_len = 5)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len), kind(0, kind_pool().size() - 1);
    std::vector<FunctionKind> slots;
    auto l = len(rng);
    for (std::size_t i = 0; i < l; ++i)
        slots.emplace_back(kind_pool()[kind(rng)]);
    return Request(std::move(slots));
}

/// Slot -> pin map of an assignment, as "slot:pin;" pairs in slot order.
inline std::string binding_key(const Assignment& a)
{
    std::string key;
    for (const auto& b : a.bindings)
        key += std::to_string(b.slot) + ":" + b.pin + ";";
    return key;
}

inline std::set<std::string> pin_set(const Assignment& a)
{
    auto pins = a.used_pins();
    return {pins.begin(), pins.end()};
}

/// Independent check of a Hall witness: the pins listed are exactly those
/// with an eligible entry for some kind in the set, and demand exceeds them.
inline bool witness_valid(const Board& board, const Request& request, const std::vector<EligibilityRule>& rules,
                          const HallWitness& w)
{
    std::size_t demand = 0;
    for (const auto& k : w.kinds)
        demand += request.multiplicity(k);
    if (demand != w.multiplicity || demand <= w.pins.size())
        return false;
    std::set<std::string> expected;
    for (const auto& pin : board.pins())
        for (const auto& e : pin.entries())
            for (const auto& k : w.kinds) {
                if (e.kind != k)
                    continue;
                bool ok = true;
                for (const auto& r : rules)
                    ok = ok && r.admits(pin, e, k);
                if (ok)
                    expected.insert(pin.id());
            }
    return expected == std::set<std::string>(w.pins.begin(), w.pins.end());
}

} // namespace pinmux::fixtures
