#include "pinmux/cli.hpp"

#include "pinmux/codegen.hpp"
#include "pinmux/complexity.hpp"
#include "pinmux/configops.hpp"
#include "pinmux/oracle.hpp"
#include "pinmux/request.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace pinmux::cli {

using nlohmann::json;

namespace {

struct Args {
    std::string board;
    std::string request;
    std::vector<std::string> requests;
    std::vector<std::string> rules;
    std::string semantics = "pinsets";
    std::string strategy = "matching";
    std::string format = "text";
    std::string target;
    std::string from;
    std::string to;
    std::string base;
    std::size_t max_len = 0;
    std::size_t cap = 0;
    std::size_t pins = 0;
    std::size_t functions = 0;
    bool oracle = false;
};

json big_to_json(const BigCount& v)
{
    if (v <= std::numeric_limits<std::uint64_t>::max())
        return static_cast<std::uint64_t>(v);
    return v.str();
}

SolveOptions make_options(const Args& a)
{
    SolveOptions opts;
    opts.semantics = a.semantics == "labeled" ? Semantics::Labeled : Semantics::UniquePinSets;
    opts.strategy = a.strategy == "threshold"   ? BestStrategy::CostThreshold
                    : a.strategy == "enumerate" ? BestStrategy::EnumerateMin
                                                : BestStrategy::MinCostMatching;
    for (const auto& r : a.rules)
        if (r == "icu-ch12")
            opts.rules.push_back(icu_channel_rule());
    if (a.cap)
        opts.cap = a.cap;
    return opts;
}

std::string seconds(double s)
{
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << s << 's';
    return out.str();
}

double round_ms(double s) { return static_cast<double>(static_cast<long long>(s * 1000.0 + 0.5)) / 1000.0; }

template <class F>
double timed(F&& f)
{
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i)
                width.push_back(0);
            width[i] = std::max(width[i], row[i].size());
        }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size())
                line += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

void print_assignment(std::ostream& out, const Assignment& a)
{
    std::vector<std::vector<std::string>> rows{{"slot", "kind", "pin", "detail"}};
    for (const auto& b : a.bindings)
        rows.push_back({std::to_string(b.slot), b.kind.name(), b.pin, b.detail});
    print_table(out, rows);
}

void print_outcome(std::ostream& out, const SolveOutcome& outcome)
{
    if (outcome.feasible()) {
        const auto& a = outcome.assignment();
        out << "status: feasible\ncost: " << a.total_cost << '\n';
        auto pins = a.used_pins();
        out << "pins: {";
        for (std::size_t i = 0; i < pins.size(); ++i)
            out << (i ? ", " : "") << pins[i];
        out << "}\n";
        if (!a.bindings.empty())
            print_assignment(out, a);
    } else {
        const auto& inf = outcome.infeasible();
        out << "status: infeasible\nreason: " << to_string(inf.reason) << '\n' << inf.message << '\n';
    }
}

int finish_outcome(const Args& a, const SolveOutcome& outcome, std::ostream& out, std::ostream& err)
{
    for (const auto& w : outcome.warnings)
        err << "warning: " << w << '\n';
    if (a.format == "json")
        out << outcome_to_json(outcome).dump(2) << '\n';
    else
        print_outcome(out, outcome);
    return outcome.feasible() ? kSuccess : kInfeasible;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

int cmd_validate(const Args& a, std::ostream& out)
{
    auto board = load_board(a.board);
    auto stats = board_stats(board);
    std::vector<std::string> kinds;
    for (const auto& k : stats.distinct_kinds)
        kinds.push_back(k.name());
    if (a.format == "json") {
        json doc{{"status", "valid"},
                 {"name", board.name() ? json(*board.name()) : json(nullptr)},
                 {"pins", stats.pin_count},
                 {"max_functions_per_pin", stats.max_functions_per_pin},
                 {"kinds", kinds},
                 {"config_space", big_to_json(config_space_board(board))}};
        out << doc.dump(2) << '\n';
        return kSuccess;
    }
    out << "board: " << board.name().value_or("(unnamed)") << '\n'
        << "pins: " << stats.pin_count << '\n'
        << "max functions per pin: " << stats.max_functions_per_pin << '\n'
        << "kinds:";
    for (const auto& k : kinds)
        out << ' ' << k;
    out << "\nconfiguration space: " << format_grouped(config_space_board(board)) << '\n';
    return kSuccess;
}

int cmd_solve(const Args& a, std::ostream& out, std::ostream& err)
{
    auto board = load_board(a.board);
    auto request = parse_request(a.request);
    return finish_outcome(a, find_feasible(board, request, make_options(a)), out, err);
}

int cmd_solve_best(const Args& a, std::ostream& out, std::ostream& err)
{
    auto board = load_board(a.board);
    auto request = parse_request(a.request);
    if (!a.base.empty()) {
        auto base = assignment_from_json(board, read_json_file(a.base));
        return finish_outcome(a, extend_assignment(board, base, request, make_options(a)), out, err);
    }
    return finish_outcome(a, find_best(board, request, make_options(a)), out, err);
}

int cmd_solve_all(const Args& a, std::ostream& out, std::ostream& err)
{
    auto board = load_board(a.board);
    auto request = parse_request(a.request);
    auto opts = make_options(a);
    auto all = enumerate_all(board, request, opts);

    if (a.oracle) {
        auto ref = oracle::brute_force_solve(board, request, opts.rules);
        const auto& maps = opts.semantics == Semantics::Labeled ? ref.labeled : ref.pin_set_reps;
        std::vector<Assignment> expected;
        for (const auto& m : maps)
            expected.push_back(oracle::to_assignment(board, request, m, opts.rules));
        auto key = [](const Assignment& x) {
            std::string k;
            for (const auto& b : x.bindings)
                k += std::to_string(b.slot) + ":" + b.pin + ";";
            return k;
        };
        std::set<std::string> got_keys, want_keys;
        for (const auto& x : all)
            got_keys.insert(key(x));
        for (const auto& x : expected)
            want_keys.insert(key(x));
        if (got_keys != want_keys) {
            err << "error: oracle mismatch: solver " << got_keys.size() << " solutions, oracle " << want_keys.size() << '\n';
            return kUsage;
        }
        err << "oracle: " << want_keys.size() << " solutions match\n";
    }

    const char* sem = opts.semantics == Semantics::Labeled ? "labeled" : "pinsets";
    if (a.format == "json") {
        json solutions = json::array();
        for (const auto& x : all)
            solutions.push_back({{"assignment", assignment_to_json(x)}, {"cost", x.total_cost}});
        json doc{{"status", all.empty() ? "infeasible" : "feasible"},
                 {"semantics", sem},
                 {"count", all.size()},
                 {"solutions", solutions}};
        out << doc.dump(2) << '\n';
    } else {
        out << "status: " << (all.empty() ? "infeasible" : "feasible") << "\nsemantics: " << sem
            << "\ncount: " << all.size() << '\n';
        std::vector<std::vector<std::string>> rows{{"#", "cost", "pins"}};
        for (std::size_t i = 0; i < all.size(); ++i) {
            std::string pins;
            for (const auto& b : all[i].bindings)
                pins += (pins.empty() ? "" : " ") + std::to_string(b.slot) + "=" + b.pin;
            rows.push_back({std::to_string(i + 1), std::to_string(all[i].total_cost), pins});
        }
        if (!all.empty())
            print_table(out, rows);
    }
    return all.empty() ? kInfeasible : kSuccess;
}

int cmd_count(const Args& a, std::ostream& out)
{
    BigCount value;
    json doc;
    if (!a.board.empty()) {
        auto board = load_board(a.board);
        value = config_space_board(board);
        doc = {{"mode", "board"}, {"pins", board.size()}};
    } else {
        if (a.functions == 0)
            throw CLI::ValidationError("count needs --board, or --pins and --functions >= 1");
        auto max_len = a.max_len ? a.max_len : a.pins;
        value = config_space(a.pins, a.functions, max_len);
        doc = {{"mode", "formula"}, {"pins", a.pins}, {"functions", a.functions}, {"max_len", max_len}};
    }
    if (a.format == "json") {
        doc["count"] = big_to_json(value);
        out << doc.dump(2) << '\n';
    } else {
        out << value.str() << '\n';
    }
    return kSuccess;
}

int cmd_emit(const Args& a, std::ostream& out)
{
    if (a.target == "prolog") {
        auto board = load_board(a.board);
        auto max_len = a.max_len ? a.max_len : std::max<std::size_t>(board.size(), 1);
        auto fact_cap = a.cap ? a.cap : kDefaultFactCap;
        auto estimate = estimate_prolog_facts(board, max_len);
        if (estimate > fact_cap)
            throw CapacityError("estimated " + estimate.str() + " facts exceed --cap " + std::to_string(fact_cap));
        emit_prolog(board, max_len, out);
        return kSuccess;
    }
    if (a.target == "alloy") {
        out << emit_alloy_spec(load_board(a.board)).text;
        return kSuccess;
    }
    auto request = parse_request(a.request);
    if (request.empty())
        throw CLI::ValidationError("--request must name at least one kind");
    if (a.target == "alloy-assert") {
        out << emit_alloy_feasibility_assertion(request).text;
        return kSuccess;
    }
    auto board = load_board(a.board);
    if (board.empty())
        throw Error("board has no pins");
    int lo = board.pins().front().cost(), hi = lo;
    for (const auto& p : board.pins()) {
        lo = std::min(lo, p.cost());
        hi = std::max(hi, p.cost());
    }
    out << emit_alloy_best_assertions(request, lo, hi).text;
    return kSuccess;
}

int cmd_graph(const Args& a, std::ostream& out)
{
    out << emit_graph_dot(load_board(a.board)).text;
    return kSuccess;
}

int cmd_merge(const Args& a, std::ostream& out)
{
    Request merged;
    for (const auto& r : a.requests)
        merged = merge_requests(merged, parse_request(r));
    if (a.format == "json") {
        std::vector<std::string> kinds;
        for (const auto& k : merged.canonical())
            kinds.push_back(k.name());
        out << json{{"request", kinds}, {"length", merged.size()}}.dump(2) << '\n';
    } else {
        out << merged.to_string() << '\n';
    }
    return kSuccess;
}

json binding_or_null(const std::optional<Binding>& b)
{
    if (!b)
        return nullptr;
    return {{"slot", b->slot}, {"kind", b->kind.name()}, {"pin", b->pin}, {"detail", b->detail}};
}

int cmd_diff(const Args& a, std::ostream& out)
{
    auto board = load_board(a.board);
    auto from = assignment_from_json(board, read_json_file(a.from));
    auto to = assignment_from_json(board, read_json_file(a.to));
    auto diff = diff_assignments(from, to);

    auto names = [](const std::vector<FunctionKind>& ks) {
        std::vector<std::string> v;
        for (const auto& k : ks)
            v.push_back(k.name());
        return v;
    };
    if (a.format == "json") {
        json changes = json::array();
        for (const auto& c : diff.changes)
            changes.push_back({{"pin", c.pin}, {"before", binding_or_null(c.before)}, {"after", binding_or_null(c.after)}});
        out << json{{"added_slots", names(diff.added_slots)},
                    {"removed_slots", names(diff.removed_slots)},
                    {"changes", changes},
                    {"cost_delta", diff.cost_delta}}
                   .dump(2)
            << '\n';
        return kSuccess;
    }
    if (diff.empty()) {
        out << "no differences\n";
        return kSuccess;
    }
    for (const auto& k : diff.added_slots)
        out << "+ slot " << k.name() << '\n';
    for (const auto& k : diff.removed_slots)
        out << "- slot " << k.name() << '\n';
    auto show = [](const std::optional<Binding>& b) {
        return b ? b->kind.name() + "/" + b->detail + " (slot " + std::to_string(b->slot) + ")" : std::string("unused");
    };
    for (const auto& c : diff.changes)
        out << "~ " << c.pin << ": " << show(c.before) << " -> " << show(c.after) << '\n';
    out << "cost delta: " << (diff.cost_delta >= 0 ? "+" : "") << diff.cost_delta << '\n';
    return kSuccess;
}

int cmd_bench(const Args& a, std::ostream& out)
{
    auto board = load_board(a.board);
    auto request = parse_request(a.request);
    auto opts = make_options(a);
    auto max_len = a.max_len ? a.max_len : request.size();
    if (max_len > request.size())
        throw CLI::ValidationError("--max-len exceeds the request length");

    json rows = json::array();
    std::vector<std::vector<std::string>> table{
        {"length", "count_pinsets", "count_labeled", "first_cost", "best_cost", "t_feasible", "t_all", "t_best"}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<FunctionKind> slots(request.slots().begin(), request.slots().begin() + static_cast<long>(len));
        Request prefix(std::move(slots));
        json row{{"length", len}};
        std::vector<std::string> cells{std::to_string(len)};
        try {
            std::optional<SolveOutcome> first, best;
            SolutionCounts counts;
            double t_feasible = timed([&] { first = find_feasible(board, prefix, opts); });
            double t_all = timed([&] { counts = count_solutions(board, prefix, opts); });
            double t_best = timed([&] { best = find_best(board, prefix, opts); });
            auto cost = [](const SolveOutcome& o) { return o.feasible() ? json(o.assignment().total_cost) : json("-"); };
            row["count_pinsets"] = big_to_json(counts.pin_sets);
            row["count_labeled"] = big_to_json(counts.labeled);
            row["first_cost"] = cost(*first);
            row["best_cost"] = cost(*best);
            row["t_feasible"] = round_ms(t_feasible);
            row["t_all"] = round_ms(t_all);
            row["t_best"] = round_ms(t_best);
            auto text = [](const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); };
            cells.insert(cells.end(), {counts.pin_sets.str(), counts.labeled.str(), text(row["first_cost"]),
                                       text(row["best_cost"]), seconds(t_feasible), seconds(t_all), seconds(t_best)});
        } catch (const std::exception& e) {
            row["error"] = e.what();
            cells.push_back(std::string("error: ") + e.what());
        }
        rows.push_back(row);
        table.push_back(cells);
    }
    if (a.format == "json")
        out << json{{"request", request.to_string()}, {"rows", rows}}.dump(2) << '\n';
    else
        print_table(out, table);
    return kSuccess;
}

} // namespace

json assignment_to_json(const Assignment& assignment)
{
    json arr = json::array();
    for (const auto& b : assignment.bindings)
        arr.push_back({{"slot", b.slot}, {"kind", b.kind.name()}, {"pin", b.pin}, {"detail", b.detail}});
    return arr;
}

json outcome_to_json(const SolveOutcome& outcome)
{
    json doc;
    if (outcome.feasible()) {
        doc["status"] = "feasible";
        doc["assignment"] = assignment_to_json(outcome.assignment());
        doc["cost"] = outcome.assignment().total_cost;
    } else {
        const auto& inf = outcome.infeasible();
        doc["status"] = "infeasible";
        doc["assignment"] = json::array();
        doc["reason"] = to_string(inf.reason);
        doc["message"] = inf.message;
        if (inf.witness) {
            std::vector<std::string> kinds;
            for (const auto& k : inf.witness->kinds)
                kinds.push_back(k.name());
            doc["witness"] = {{"kinds", kinds}, {"multiplicity", inf.witness->multiplicity}, {"pins", inf.witness->pins}};
        }
    }
    if (!outcome.warnings.empty())
        doc["warnings"] = outcome.warnings;
    return doc;
}

Assignment assignment_from_json(const Board& board, const json& doc)
{
    try {
        const json& arr = doc.is_array() ? doc : doc.at("assignment");
        Assignment a;
        a.board_fingerprint = board.fingerprint();
        for (const auto& item : arr) {
            Binding b;
            b.slot = item.at("slot").get<std::size_t>();
            b.kind = FunctionKind(item.at("kind").get<std::string>());
            auto pin = item.at("pin").get<std::string>();
            const Pin* p = board.find(pin);
            if (!p)
                throw LookupError("unknown pin " + pin);
            b.pin = p->id();
            b.detail = item.at("detail").get<std::string>();
            bool offered = std::any_of(p->entries().begin(), p->entries().end(), [&](const FunctionEntry& e) {
                return e.kind == b.kind && e.detail == b.detail;
            });
            if (!offered)
                throw Error("pin " + b.pin + " has no entry " + b.kind.name() + "/" + b.detail);
            a.total_cost += p->cost();
            a.bindings.push_back(std::move(b));
        }
        std::sort(a.bindings.begin(), a.bindings.end(), [](const Binding& x, const Binding& y) { return x.slot < y.slot; });
        return a;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed assignment document: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pin assignment engine for multiplexed interface boards", "pinmux"};
    app.require_subcommand(1);
    Args a;

    auto fmt = [&](CLI::App* cmd) {
        cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto board_opt = [&](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--board", a.board, "Board file");
        if (required)
            o->required();
    };
    auto solve_opts = [&](CLI::App* cmd) {
        board_opt(cmd, true);
        cmd->add_option("--request", a.request, "Comma-separated function kinds")->required();
        cmd->add_option("--rule", a.rules, "Eligibility rule (repeatable)")->check(CLI::IsMember({"icu-ch12"}));
        fmt(cmd);
    };

    auto* validate = app.add_subcommand("validate", "Parse a board file and print its statistics");
    board_opt(validate, true);
    fmt(validate);

    auto* solve = app.add_subcommand("solve", "Find the first feasible assignment");
    solve_opts(solve);

    auto* solve_all = app.add_subcommand("solve-all", "Enumerate all assignments");
    solve_opts(solve_all);
    solve_all->add_option("--semantics", a.semantics, "Counting semantics")->check(CLI::IsMember({"pinsets", "labeled"}));
    solve_all->add_option("--cap", a.cap, "Maximum number of solutions to materialize");
    solve_all->add_flag("--oracle", a.oracle)->group("");

    auto* solve_best = app.add_subcommand("solve-best", "Find the minimum-cost assignment");
    solve_opts(solve_best);
    solve_best->add_option("--strategy", a.strategy, "Best-search strategy")
        ->check(CLI::IsMember({"matching", "threshold", "enumerate"}));
    solve_best->add_option("--base", a.base, "Existing assignment (solve JSON) to extend without rebinding");

    auto* count = app.add_subcommand("count", "Size of the configuration space");
    board_opt(count, false);
    count->add_option("--pins", a.pins, "Number of pins");
    count->add_option("--functions", a.functions, "Configurations per pin");
    count->add_option("--max-len", a.max_len, "Maximum assignment length (default: pins)");
    fmt(count);

    auto* emit = app.add_subcommand("emit", "Generate Prolog or Alloy models");
    emit->add_option("--target", a.target, "Output notation")
        ->required()
        ->check(CLI::IsMember({"prolog", "alloy", "alloy-assert", "alloy-best"}));
    board_opt(emit, false);
    emit->add_option("--request", a.request, "Request for assertion targets");
    emit->add_option("--max-len", a.max_len, "Longest configuration for Prolog facts (default: pins)");
    emit->add_option("--cap", a.cap, "Maximum estimated Prolog facts");

    auto* graph = app.add_subcommand("graph", "Domain graph in DOT");
    board_opt(graph, true);

    auto* merge = app.add_subcommand("merge", "Multiset sum of requests");
    merge->add_option("--request", a.requests, "Request (repeatable)")->required();
    fmt(merge);

    auto* diff = app.add_subcommand("diff", "Compare two assignments");
    board_opt(diff, true);
    diff->add_option("--from", a.from, "First assignment (solve JSON)")->required();
    diff->add_option("--to", a.to, "Second assignment (solve JSON)")->required();
    fmt(diff);

    auto* bench = app.add_subcommand("bench", "Time all use cases over request prefixes");
    solve_opts(bench);
    bench->add_option("--max-len", a.max_len, "Longest prefix (default: request length)");

    std::vector<std::string> argv_store{"pinmux"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (validate->parsed())
            return cmd_validate(a, out);
        if (solve->parsed())
            return cmd_solve(a, out, err);
        if (solve_all->parsed())
            return cmd_solve_all(a, out, err);
        if (solve_best->parsed())
            return cmd_solve_best(a, out, err);
        if (count->parsed())
            return cmd_count(a, out);
        if (emit->parsed()) {
            if (a.target != "alloy-assert" && a.board.empty())
                throw CLI::ValidationError("--board is required for this target");
            return cmd_emit(a, out);
        }
        if (graph->parsed())
            return cmd_graph(a, out);
        if (merge->parsed())
            return cmd_merge(a, out);
        if (diff->parsed())
            return cmd_diff(a, out);
        if (bench->parsed())
            return cmd_bench(a, out);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: " << msg << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace pinmux::cli
