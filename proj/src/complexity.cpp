#include "pinmux/complexity.hpp"

#include <stdexcept>
#include <vector>

namespace pinmux {

namespace {

// table[j][n] = K(n, j + 1) for n in 0..max_n; column 0 unused.
std::vector<std::vector<BigCount>> k_table(std::uint64_t max_n, std::uint64_t m)
{
    std::vector<std::vector<BigCount>> table(m, std::vector<BigCount>(max_n + 1));
    for (std::uint64_t n = 1; n <= max_n; ++n)
        table[0][n] = 1;
    for (std::uint64_t j = 1; j < m; ++j) {
        BigCount running = 0;
        for (std::uint64_t n = 1; n <= max_n; ++n) {
            running += table[j - 1][n];
            table[j][n] = 1 + running;
        }
    }
    return table;
}

} // namespace

BigCount binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigCount result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigCount k_factor(std::uint64_t n, std::uint64_t m)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("k_factor requires n >= 1 and m >= 1");
    return k_table(n, m)[m - 1][n];
}

BigCount config_space(std::uint64_t n_pins, std::uint64_t m, std::uint64_t max_len)
{
    if (m < 1)
        throw std::invalid_argument("config_space requires m >= 1");
    auto top = std::min(n_pins, max_len);
    if (top == 0)
        return 0;
    auto table = k_table(top, m);
    BigCount total = 0;
    for (std::uint64_t k = 1; k <= top; ++k)
        total += binomial(n_pins, k) * table[m - 1][k];
    return total;
}

BigCount config_space_board(const Board& board)
{
    BigCount product = 1;
    for (const auto& pin : board.pins())
        product *= 1 + pin.cost();
    return product - 1;
}

std::string format_grouped(const BigCount& value)
{
    auto digits = value.str();
    std::string out;
    auto lead = digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && i >= lead && (i - lead) % 3 == 0)
            out += ',';
        out += digits[i];
    }
    return out;
}

} // namespace pinmux
