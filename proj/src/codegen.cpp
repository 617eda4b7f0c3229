#include "pinmux/codegen.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pinmux {

namespace {

constexpr std::string_view kPrologRules = R"(getConfig(RequiredConfiguration, Pair) :-
    msort(RequiredConfiguration, S),
    config(S, Pair).

allConfigs(RequiredConfiguration, Set) :-
    setof([Pins,Costs],
        getConfig(RequiredConfiguration,
        [Pins,Costs]), Set).

cheapestConfig(R, Pins, Costs) :-
    setof([Pins,Costs],
     getConfig(R, [Pins,Costs]), Set),
    Set = [_|_],
    minimal(Set, [Pins,Costs]).

minimal([X], X) :- !.
minimal([[P,C]|T], Best) :-
    minimal(T, [P1,C1]),
    (   C =< C1 -> Best = [P,C] ; Best = [P1,C1] ).
)";

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string prolog_atom(const std::string& text)
{
    bool plain = !text.empty() && text[0] >= 'a' && text[0] <= 'z' &&
                 std::all_of(text.begin(), text.end(), [](char c) {
                     return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
                 });
    if (plain)
        return text;
    std::string out = "'";
    for (char c : text) {
        if (c == '\'' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "'";
}

std::string dot_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

// Counts bytes and newline-terminated items written through it.
class CountingSink {
public:
    explicit CountingSink(std::ostream& out) : out_(out) {}
    void write(std::string_view s)
    {
        out_ << s;
        bytes_ += s.size();
    }
    std::size_t bytes() const { return bytes_; }

private:
    std::ostream& out_;
    std::size_t bytes_ = 0;
};

std::string join(const std::vector<std::string>& items, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

std::string assertion_vars(std::size_t l)
{
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= l; ++i)
        vars.push_back("p" + std::to_string(i));
    return (l > 1 ? "all disj " : "all ") + join(vars, ", ") + ":Pin |";
}

std::string assertion_name(const Request& request)
{
    std::vector<std::string> names;
    for (const auto& k : request.canonical())
        names.push_back(k.name());
    return join(names, "_");
}

void write_assertion(std::ostringstream& out, const std::string& name, const Request& request,
                     const std::string& cost_term)
{
    const auto& kinds = request.canonical();
    out << "assert " << name << " {\n\t" << assertion_vars(kinds.size()) << "\n\tnot (\n";
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        out << "\t   " << kinds[i].name() << " in p" << i + 1 << ".conntype";
        if (i + 1 < kinds.size() || !cost_term.empty())
            out << " &&";
        out << '\n';
    }
    if (!cost_term.empty())
        out << "\t   " << cost_term << '\n';
    out << "\t)}\n";
}

int int_bitwidth(long long max_value)
{
    int bits = 1;
    while ((1LL << (bits - 1)) - 1 < max_value)
        ++bits;
    return bits;
}

EmitterOutput finish(EmitterKind kind, std::string text, std::size_t items)
{
    if (auto err = check_well_formed(kind, text); !err.empty())
        throw std::logic_error("emitter produced malformed output: " + err);
    EmitterOutput out{kind, std::move(text), {}};
    out.stats = {items, out.text.size()};
    return out;
}

} // namespace

std::string prolog_kind_atom(const FunctionKind& kind)
{
    auto text = lower(kind.name());
    std::replace(text.begin(), text.end(), '_', '-');
    return prolog_atom(text);
}

BigCount estimate_prolog_facts(const Board& board, std::size_t max_len)
{
    // Coefficients of prod_p (1 + d_p x), d_p = distinct kinds of pin p.
    std::vector<BigCount> poly{1};
    for (const auto& pin : board.pins()) {
        std::set<FunctionKind> kinds;
        for (const auto& e : pin.entries())
            kinds.insert(e.kind);
        poly.push_back(0);
        for (std::size_t i = poly.size() - 1; i > 0; --i)
            poly[i] += poly[i - 1] * kinds.size();
    }
    BigCount total = 0;
    for (std::size_t k = 1; k < poly.size() && k <= max_len; ++k)
        total += poly[k];
    return total;
}

EmitterStats emit_prolog(const Board& board, std::size_t max_len, std::ostream& sink)
{
    if (max_len == 0)
        throw std::invalid_argument("max_len must be positive");
    CountingSink out(sink);
    std::size_t facts = 0;

    out.write("% Pin configuration facts");
    if (board.name())
        out.write(" for " + *board.name());
    out.write("\n:- dynamic config/2.\n\n");

    // Per pin: distinct kind atoms (sorted) and lowercase pin atom.
    std::vector<std::vector<std::string>> atoms;
    std::vector<std::string> pin_atoms;
    for (const auto& pin : board.pins()) {
        std::set<std::string> kinds;
        for (const auto& e : pin.entries())
            kinds.insert(prolog_kind_atom(e.kind));
        atoms.emplace_back(kinds.begin(), kinds.end());
        pin_atoms.push_back(prolog_atom(lower(pin.id())));
    }

    // Facts keys must be in msort (standard order of atoms) order, which
    // compares the unquoted atom text.
    auto atom_text = [](const std::string& a) {
        return a.size() >= 2 && a.front() == '\'' ? a.substr(1, a.size() - 2) : a;
    };
    auto by_text = [&](const std::string& a, const std::string& b) { return atom_text(a) < atom_text(b); };
    auto list_less = [&](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), by_text);
    };

    const std::size_t n = board.size();
    const std::size_t top = std::min(max_len, n);
    for (std::size_t k = 1; k <= top; ++k) {
        std::vector<std::size_t> subset(k);
        for (std::size_t i = 0; i < k; ++i)
            subset[i] = i;
        for (;;) {
            std::set<std::vector<std::string>, decltype(list_less)> multisets(list_less);
            std::vector<std::size_t> choice(k, 0);
            for (;;) {
                std::vector<std::string> ms;
                for (std::size_t i = 0; i < k; ++i)
                    ms.push_back(atoms[subset[i]][choice[i]]);
                std::sort(ms.begin(), ms.end(), by_text);
                multisets.insert(std::move(ms));
                std::size_t i = k;
                while (i > 0 && ++choice[i - 1] == atoms[subset[i - 1]].size())
                    choice[--i] = 0;
                if (i == 0)
                    break;
            }

            std::vector<std::string> pins;
            int cost = 0;
            for (auto p : subset) {
                pins.push_back(pin_atoms[p]);
                cost += board.pins()[p].cost();
            }
            auto tail = "],[[" + join(pins, ",") + "]," + std::to_string(cost) + "]).\n";
            for (const auto& ms : multisets) {
                out.write("config([" + join(ms, ",") + tail);
                ++facts;
            }

            // Next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && subset[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++subset[i - 1];
            for (std::size_t j = i; j < k; ++j)
                subset[j] = subset[j - 1] + 1;
        }
    }

    out.write("\n");
    out.write(kPrologRules);
    return {facts, out.bytes()};
}

EmitterOutput emit_prolog(const Board& board, std::size_t max_len, std::size_t fact_cap)
{
    auto estimate = estimate_prolog_facts(board, max_len);
    if (estimate > fact_cap)
        throw CapacityError("estimated " + estimate.str() + " Prolog facts exceed the cap of " +
                            std::to_string(fact_cap) + "; stream the output instead");
    std::ostringstream out;
    auto stats = emit_prolog(board, max_len, out);
    auto result = finish(EmitterKind::Prolog, out.str(), stats.items);
    return result;
}

EmitterOutput emit_alloy_spec(const Board& board)
{
    std::set<std::string> kinds, details;
    for (const auto& pin : board.pins())
        for (const auto& e : pin.entries()) {
            kinds.insert(e.kind.name());
            if (e.detail != kNoDetail)
                details.insert(e.detail);
        }

    std::ostringstream out;
    out << "// Pin configuration model";
    if (board.name())
        out << " for " << *board.name();
    out << "\n\nabstract sig ConnType {}\nabstract sig ConnDetail {}\n"
           "abstract sig Pin {\n  conntype: some ConnType,\n  conn_detail: set ConnDetail,\n  cost: one Int\n}\n\n";
    if (!kinds.empty())
        out << "one sig " << join({kinds.begin(), kinds.end()}, ", ") << " extends ConnType {}\n";
    if (!details.empty())
        out << "one sig " << join({details.begin(), details.end()}, ", ") << " extends ConnDetail {}\n";

    for (const auto& pin : board.pins()) {
        std::vector<std::string> types, dets;
        for (const auto& e : pin.entries()) {
            types.push_back(e.kind.name());
            if (e.detail != kNoDetail)
                dets.push_back(e.detail);
        }
        out << "\none sig " << pin.id() << " extends Pin {} {\n";
        out << "  conntype = " << join(types, " + ") << '\n';
        if (dets.empty())
            out << "  no conn_detail\n";
        else
            out << "  conn_detail = " << join(dets, " + ") << '\n';
        out << "  cost = " << pin.cost() << "}\n";
    }
    return finish(EmitterKind::AlloySpec, out.str(), board.size());
}

EmitterOutput emit_alloy_feasibility_assertion(const Request& request)
{
    if (request.empty())
        throw std::invalid_argument("assertion needs a nonempty request");
    auto name = assertion_name(request);
    std::ostringstream out;
    write_assertion(out, name, request, "");
    out << "\ncheck " << name << '\n';
    return finish(EmitterKind::AlloyAssert, out.str(), 1);
}

EmitterOutput emit_alloy_best_assertions(const Request& request, int pc_min, int pc_max)
{
    if (request.empty())
        throw std::invalid_argument("assertion needs a nonempty request");
    if (pc_min < 1 || pc_min > pc_max)
        throw std::invalid_argument("pin cost range must satisfy 1 <= pc_min <= pc_max");

    const auto l = static_cast<long long>(request.size());
    const int bits = int_bitwidth(l * pc_max);
    std::string sum = "p1.cost";
    for (long long i = 2; i <= l; ++i)
        sum += ".add[p" + std::to_string(i) + ".cost]";

    auto base = assertion_name(request);
    std::ostringstream out;
    std::size_t count = 0;
    for (long long x = l * pc_min; x <= l * pc_max; ++x) {
        auto name = base + "_COST_" + std::to_string(x);
        if (count)
            out << '\n';
        write_assertion(out, name, request, sum + "<=" + std::to_string(x));
        out << "\ncheck " << name << " for " << bits << " Int\n";
        ++count;
    }
    return finish(EmitterKind::AlloyAssert, out.str(), count);
}

EmitterOutput emit_graph_dot(const Board& board)
{
    std::ostringstream out;
    std::size_t edges = 0;
    out << "digraph \"" << dot_escape(board.name().value_or("board")) << "\" {\n";
    out << "  rankdir=LR;\n";
    out << "  \"_n_B\" [label=\"n_B\", shape=circle];\n";
    for (const auto& pin : board.pins()) {
        out << "  \"" << pin.id() << "\" [label=\"" << pin.id();
        for (const auto& e : pin.entries()) {
            out << "\\n" << e.kind.name();
            if (e.detail != kNoDetail)
                out << '/' << e.detail;
        }
        out << "\", shape=box];\n";
    }
    out << "  \"_n_E\" [label=\"n_E\", shape=doublecircle];\n";

    auto edge = [&](const std::string& from, const std::string& to) {
        out << "  \"" << from << "\" -> \"" << to << "\";\n";
        ++edges;
    };
    if (board.empty())
        edge("_n_B", "_n_E");
    for (const auto& pin : board.pins())
        edge("_n_B", pin.id());
    for (const auto& from : board.pins())
        for (const auto& to : board.pins())
            if (&from != &to)
                edge(from.id(), to.id());
    for (const auto& pin : board.pins())
        edge(pin.id(), "_n_E");
    out << "}\n";
    return finish(EmitterKind::Dot, out.str(), edges);
}

std::string check_well_formed(EmitterKind kind, const std::string& text)
{
    std::vector<char> stack;
    bool in_quote = false;
    char quote = 0;
    std::size_t line = 1;
    bool pending_clause = false;

    auto closer = [](char open) { return open == '(' ? ')' : open == '[' ? ']' : '}'; };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n')
            ++line;
        if (in_quote) {
            if (c == '\\')
                ++i;
            else if (c == quote)
                in_quote = false;
            continue;
        }
        bool prolog = kind == EmitterKind::Prolog;
        if ((prolog && c == '%') || (kind != EmitterKind::Prolog && c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
            while (i < text.size() && text[i] != '\n')
                ++i;
            ++line;
            continue;
        }
        if (c == '"' || (prolog && c == '\'')) {
            in_quote = true;
            quote = c;
            pending_clause = prolog;
            continue;
        }
        if (c == '(' || c == '[' || c == '{') {
            stack.push_back(c);
        } else if (c == ')' || c == ']' || c == '}') {
            if (stack.empty() || closer(stack.back()) != c)
                return "unbalanced '" + std::string(1, c) + "' on line " + std::to_string(line);
            stack.pop_back();
        }
        if (prolog) {
            bool end = c == '.' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])));
            if (end) {
                if (!stack.empty())
                    return "clause ends inside brackets on line " + std::to_string(line);
                pending_clause = false;
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                pending_clause = true;
            }
        }
    }
    if (in_quote)
        return "unterminated quote";
    if (!stack.empty())
        return "unclosed '" + std::string(1, stack.back()) + "'";
    if (pending_clause)
        return "unterminated clause at end of text";
    return {};
}

} // namespace pinmux
