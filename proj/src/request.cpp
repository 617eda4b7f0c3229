#include "pinmux/request.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pinmux {

Request::Request(std::vector<FunctionKind> slots) : slots_(std::move(slots)), order_(slots_.size())
{
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return slots_[a].name() < slots_[b].name(); });
    canonical_.reserve(slots_.size());
    for (auto i : order_)
        canonical_.push_back(slots_[i]);
}

std::size_t Request::multiplicity(const FunctionKind& kind) const
{
    return static_cast<std::size_t>(std::count(slots_.begin(), slots_.end(), kind));
}

std::string Request::to_string() const
{
    std::string out;
    for (const auto& k : canonical_) {
        if (!out.empty())
            out += ',';
        out += k.name();
    }
    return out;
}

Request parse_request(std::string_view text)
{
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    auto blank = std::all_of(text.begin(), text.end(), is_space);
    if (blank)
        return Request{};

    std::vector<FunctionKind> slots;
    std::size_t pos = 0;
    for (;;) {
        auto comma = text.find(',', pos);
        auto end = comma == std::string_view::npos ? text.size() : comma;
        auto b = pos;
        auto e = end;
        while (b < e && is_space(text[b]))
            ++b;
        while (e > b && is_space(text[e - 1]))
            --e;
        if (b == e)
            throw ParseError("empty kind token in request", 1, pos + 1);
        auto token = text.substr(b, e - b);
        auto name = FunctionKind::canonical_name(token);
        if (!name)
            throw ParseError("invalid function kind '" + std::string(token) + "' in request", 1, b + 1);
        slots.emplace_back(*name);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return Request(std::move(slots));
}

Request canonicalize(const Request& request)
{
    return Request(request.canonical());
}

QuickReject quick_reject(const Board& board, const Request& request)
{
    if (request.size() > board.size())
        return {true, "request needs " + std::to_string(request.size()) + " pins but the board has " +
                          std::to_string(board.size())};

    std::map<FunctionKind, std::size_t> demand;
    for (const auto& k : request.slots())
        ++demand[k];
    for (const auto& [kind, count] : demand) {
        auto supply = static_cast<std::size_t>(std::count_if(board.pins().begin(), board.pins().end(),
                                                             [&](const Pin& p) { return p.offers(kind); }));
        if (supply == 0)
            return {true, "no pin offers " + kind.name()};
        if (count > supply)
            return {true, std::to_string(count) + " x " + kind.name() + " requested but only " + std::to_string(supply) +
                              " pins offer it"};
    }
    return {};
}

} // namespace pinmux
