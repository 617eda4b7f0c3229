#include "pinmux/board.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pinmux {

namespace {

bool is_id_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Cursor over a single line; columns are 1-based byte offsets.
class LineScanner {
public:
    LineScanner(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    void skip_blanks()
    {
        while (pos_ < line_.size() && is_blank(line_[pos_]))
            ++pos_;
    }
    bool at_end() const { return pos_ >= line_.size(); }
    char peek() const { return at_end() ? '\0' : line_[pos_]; }
    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_no_, column()); }

    void expect(char c)
    {
        skip_blanks();
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view take_while(bool (*pred)(char))
    {
        auto start = pos_;
        while (pos_ < line_.size() && pred(line_[pos_]))
            ++pos_;
        return line_.substr(start, pos_ - start);
    }

    std::string_view rest()
    {
        auto r = line_.substr(pos_);
        pos_ = line_.size();
        return r;
    }

private:
    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

bool is_kind_char(char c) { return is_id_char(c) || c == '-'; }

FunctionEntry parse_entry(LineScanner& sc)
{
    sc.skip_blanks();
    auto kind_col = sc.column();
    auto token = sc.take_while(is_kind_char);
    if (token.empty())
        sc.fail("expected function kind");
    auto kind = FunctionKind::canonical_name(token);
    if (!kind)
        throw ParseError("invalid function kind '" + std::string(token) + "'", 0, kind_col);
    FunctionEntry entry{FunctionKind(*kind), std::string(kNoDetail)};
    sc.skip_blanks();
    if (sc.peek() == '/') {
        sc.expect('/');
        sc.skip_blanks();
        auto detail = sc.take_while(is_id_char);
        if (detail.empty())
            sc.fail("expected function detail after '/'");
        entry.detail = std::string(detail);
    }
    return entry;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (is_blank(s.front()) || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (is_blank(s.back()) || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message : message),
      line_(line), column_(column)
{
}

bool iequals(std::string_view a, std::string_view b) noexcept
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

std::optional<std::string> FunctionKind::canonical_name(std::string_view token)
{
    std::string out;
    out.reserve(token.size());
    for (char c : token) {
        if (c == '-')
            c = '_';
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (out.empty() || !(out[0] >= 'A' && out[0] <= 'Z'))
        return std::nullopt;
    for (char c : out)
        if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
            return std::nullopt;
    return out;
}

FunctionKind::FunctionKind(std::string_view token)
{
    auto name = canonical_name(token);
    if (!name)
        throw Error("invalid function kind '" + std::string(token) + "'");
    name_ = std::move(*name);
}

Pin::Pin(std::string id, std::vector<FunctionEntry> entries) : id_(std::move(id)), entries_(std::move(entries))
{
    if (entries_.empty())
        throw Error("pin " + id_ + " has no function entries");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (entries_[i] == entries_[j])
                throw Error("pin " + id_ + " lists " + entries_[i].kind.name() + "/" + entries_[i].detail + " twice");
}

bool Pin::offers(const FunctionKind& kind) const
{
    return std::any_of(entries_.begin(), entries_.end(), [&](const FunctionEntry& e) { return e.kind == kind; });
}

Board::Board(std::optional<std::string> name, std::vector<Pin> pins) : name_(std::move(name)), pins_(std::move(pins))
{
    for (std::size_t i = 0; i < pins_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (iequals(pins_[i].id(), pins_[j].id()))
                throw Error("duplicate pin id " + pins_[i].id());
    fingerprint_ = fnv1a(serialize_board(*this));
}

const Pin* Board::find(std::string_view pin_id) const
{
    auto idx = index_of(pin_id);
    return idx ? &pins_[*idx] : nullptr;
}

std::optional<std::size_t> Board::index_of(std::string_view pin_id) const
{
    for (std::size_t i = 0; i < pins_.size(); ++i)
        if (iequals(pins_[i].id(), pin_id))
            return i;
    return std::nullopt;
}

Board parse_board(std::string_view text)
{
    std::optional<std::string> name;
    std::vector<Pin> pins;
    std::size_t line_no = 0;

    while (!text.empty()) {
        auto nl = text.find('\n');
        auto raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);

        LineScanner sc(raw, line_no);
        sc.skip_blanks();
        if (sc.at_end())
            continue;

        auto keyword = sc.take_while(is_id_char);
        if (keyword == "board") {
            if (name)
                sc.fail("duplicate board header");
            if (!pins.empty())
                sc.fail("board header must precede pin lines");
            if (!sc.at_end() && !is_blank(sc.peek()))
                sc.fail("expected blank after 'board'");
            auto n = trim(sc.rest());
            if (n.empty())
                sc.fail("board name is empty");
            name = std::string(n);
            continue;
        }
        if (keyword != "pin")
            sc.fail(keyword.empty() ? "expected 'pin' or 'board'" : "unknown keyword '" + std::string(keyword) + "'");

        sc.skip_blanks();
        auto id_col = sc.column();
        if (!is_id_start(sc.peek()))
            sc.fail("expected pin id");
        std::string id(sc.take_while(is_id_char));
        sc.expect('=');

        std::vector<FunctionEntry> entries;
        for (;;) {
            try {
                entries.push_back(parse_entry(sc));
            } catch (const ParseError& e) {
                if (e.line() == 0)
                    throw ParseError(e.what(), line_no, e.column());
                throw;
            }
            const auto& added = entries.back();
            for (std::size_t i = 0; i + 1 < entries.size(); ++i)
                if (entries[i] == added)
                    sc.fail("duplicate entry " + added.kind.name() + "/" + added.detail + " on pin " + id);
            sc.skip_blanks();
            if (sc.at_end())
                break;
            sc.expect(',');
        }

        for (const auto& p : pins)
            if (iequals(p.id(), id))
                throw ParseError("duplicate pin id " + id, line_no, id_col);
        pins.emplace_back(std::move(id), std::move(entries));
    }
    return Board(std::move(name), std::move(pins));
}

Board load_board(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open board file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_board(ss.str());
}

std::string serialize_board(const Board& board)
{
    std::ostringstream out;
    if (board.name())
        out << "board " << *board.name() << '\n';
    for (const auto& pin : board.pins()) {
        out << "pin " << pin.id() << " =";
        bool first = true;
        for (const auto& e : pin.entries()) {
            out << (first ? " " : ", ") << e.kind.name();
            if (e.detail != kNoDetail)
                out << '/' << e.detail;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

int cost_of(const Board& board, std::string_view pin_id)
{
    const Pin* pin = board.find(pin_id);
    if (!pin)
        throw LookupError("unknown pin id " + std::string(pin_id));
    return pin->cost();
}

BoardStats board_stats(const Board& board)
{
    BoardStats stats;
    stats.pin_count = board.size();
    for (const auto& pin : board.pins()) {
        stats.max_functions_per_pin = std::max(stats.max_functions_per_pin, pin.cost());
        for (const auto& e : pin.entries())
            stats.distinct_kinds.insert(e.kind);
    }
    return stats;
}

} // namespace pinmux
