#pragma once

#include "pinmux/board.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pinmux {

/// Exact nonnegative integer for configuration-space sizes.
using BigCount = boost::multiprecision::cpp_int;

/// n choose k; zero when k > n.
BigCount binomial(std::uint64_t n, std::uint64_t k);

/// Multiplicity factor K(n, m):
///
///     K(n, 1) = 1
///     K(n, m) = 1 + sum_{p=1..n} K(p, m-1)   for m > 1
///
/// Evaluated bottom-up over a memo table. Requires n >= 1, m >= 1.
BigCount k_factor(std::uint64_t n, std::uint64_t m);

/// Size of the configuration space of `n_pins` pins with `m` configurations
/// each, over assignment lengths 1..max_len:
///
///     sum_{k=1..max_len} C(n_pins, k) * K(k, m)
///
/// Requires m >= 1. Terms with k > n_pins vanish.
BigCount config_space(std::uint64_t n_pins, std::uint64_t m, std::uint64_t max_len);

/// Heterogeneous variant for a concrete board: the number of pairs
/// (nonempty pin subset, one function entry chosen per selected pin),
/// i.e. prod_p (1 + cost(p)) - 1.
BigCount config_space_board(const Board& board);

/// Decimal with thousands separators, e.g. "1,099,126,862,792".
std::string format_grouped(const BigCount& value);

} // namespace pinmux
