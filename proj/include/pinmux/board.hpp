#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pinmux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed board or request text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A pin id or other named item that is not present.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A result would exceed a configured size cap, or an instance exceeds a size guard.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Canonical function kind token, e.g. ANALOG, ICU, SERIAL_TX.
///
/// Construction canonicalizes (uppercase, '-' -> '_') and validates against
/// `[A-Z][A-Z0-9_]*`. The set of kinds is open.
class FunctionKind {
public:
    explicit FunctionKind(std::string_view token);

    /// Returns the canonical spelling of `token`, or nullopt if it is not a valid kind.
    static std::optional<std::string> canonical_name(std::string_view token);

    const std::string& name() const noexcept { return name_; }

    friend bool operator==(const FunctionKind&, const FunctionKind&) = default;
    friend auto operator<=>(const FunctionKind&, const FunctionKind&) = default;

private:
    std::string name_;
};

inline constexpr std::string_view kNoDetail = "-";

struct FunctionEntry {
    FunctionKind kind;
    std::string detail{kNoDetail};

    friend bool operator==(const FunctionEntry&, const FunctionEntry&) = default;
};

class Pin {
public:
    /// Throws Error on an empty entry list or a repeated (kind, detail) pair.
    Pin(std::string id, std::vector<FunctionEntry> entries);

    const std::string& id() const noexcept { return id_; }
    const std::vector<FunctionEntry>& entries() const noexcept { return entries_; }

    /// Number of function entries; the multiplexing price of using this pin.
    int cost() const noexcept { return static_cast<int>(entries_.size()); }

    bool offers(const FunctionKind& kind) const;

    friend bool operator==(const Pin&, const Pin&) = default;

private:
    std::string id_;
    std::vector<FunctionEntry> entries_;
};

/// Pin-capability table. Immutable; pin order is declaration order.
class Board {
public:
    Board() = default;
    /// Throws Error on duplicate pin ids (case-insensitive).
    Board(std::optional<std::string> name, std::vector<Pin> pins);

    const std::optional<std::string>& name() const noexcept { return name_; }
    const std::vector<Pin>& pins() const noexcept { return pins_; }
    std::size_t size() const noexcept { return pins_.size(); }
    bool empty() const noexcept { return pins_.empty(); }

    /// Case-insensitive lookup.
    const Pin* find(std::string_view pin_id) const;
    std::optional<std::size_t> index_of(std::string_view pin_id) const;

    /// Stable 64-bit hash of the canonical serialization. Identifies the board
    /// an assignment was computed for.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    friend bool operator==(const Board& a, const Board& b) { return a.name_ == b.name_ && a.pins_ == b.pins_; }

private:
    std::optional<std::string> name_;
    std::vector<Pin> pins_;
    std::uint64_t fingerprint_ = 0;
};

struct BoardStats {
    std::size_t pin_count = 0;
    int max_functions_per_pin = 0;
    std::set<FunctionKind> distinct_kinds;
};

/// Parses the line-oriented board format:
///
///     # comment
///     board <name>
///     pin <ID> = <KIND>[/<DETAIL>] (, <KIND>[/<DETAIL>])*
Board parse_board(std::string_view text);

/// Reads and parses a board file. IO failures raise Error.
Board load_board(const std::string& path);

/// Inverse of parse_board; the output reparses to an equal Board.
std::string serialize_board(const Board& board);

/// Throws LookupError for an unknown pin id.
int cost_of(const Board& board, std::string_view pin_id);

BoardStats board_stats(const Board& board);

/// ASCII case-insensitive equality, used for pin ids.
bool iequals(std::string_view a, std::string_view b) noexcept;

} // namespace pinmux
