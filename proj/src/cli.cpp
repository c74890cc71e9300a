#include "wkat/cli.hpp"

#include "wkat/equiv.hpp"
#include "wkat/error.hpp"
#include "wkat/normal_form.hpp"
#include "wkat/relational.hpp"
#include "wkat/series.hpp"
#include "wkat/wprog.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <limits>
#include <sstream>

namespace wkat {

namespace {

using nlohmann::json;

struct Common {
    std::string actions = "a,b,c";
    std::string tests = "p,q";
    std::string semiring = "BOOL";
    std::size_t bound = default_bound;
    std::uint64_t seed = 42;
    bool json = false;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void add_common(CLI::App* cmd, Common& c, bool with_bound) {
    cmd->add_option("--actions", c.actions, "comma-separated action letters")->capture_default_str();
    cmd->add_option("--tests", c.tests, "comma-separated test letters")->capture_default_str();
    cmd->add_option("--semiring", c.semiring, "built-in name (BOOL, TROPk, LUKn) or semiring file")
        ->capture_default_str();
    if (with_bound) cmd->add_option("--bound", c.bound, "length bound L")->capture_default_str();
    cmd->add_flag("--json", c.json, "machine-readable output");
}

Alphabets alphabets_of(const Common& c) { return Alphabets(split_list(c.actions), split_list(c.tests)); }

std::string word_text(const Word& w, const Alphabets& al) {
    return print(GuardedString(w, static_cast<unsigned>(al.tests().size())), al);
}

json series_json(const TruncatedSeries& r, const Alphabets& al) {
    json arr = json::array();
    for (const auto& [w, s] : r.sorted())
        arr.push_back({{"word", format_word(w, r.spec(), al)}, {"weight", r.semiring()->token(s)}});
    return arr;
}

json matrix_json(const Matrix& m, const std::vector<std::string>& states) {
    json arr = json::array();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, x] : m.row(i))
            arr.push_back({{"from", states[i]}, {"to", states[j]}, {"weight", m.semiring()->token(x)}});
    return {{"semiring", m.semiring()->name()}, {"states", states}, {"entries", arr}};
}

int cmd_check_semiring(const std::string& target, bool as_json, std::ostream& out) {
    const SemiringRef s = semirings::resolve(target);
    const VerificationReport rep = verify_copi(*s);
    if (as_json) {
        json checks = json::array();
        for (const auto& c : rep.checks) {
            json w = json::array();
            for (Elem x : c.witness) w.push_back(s->token(x));
            checks.push_back({{"name", c.name}, {"required", c.required}, {"passed", c.passed}, {"witness", w}});
        }
        out << json{{"semiring", s->name()}, {"elements", s->elements()}, {"copi", rep.ok()}, {"checks", checks}}.dump()
            << '\n';
    } else {
        out << format_report(*s, rep);
    }
    return rep.ok() ? exit_ok : exit_negative;
}

int cmd_normalize(const Common& c, const std::string& text, std::size_t max_nodes, std::ostream& out) {
    const Alphabets al = alphabets_of(c);
    const SemiringRef s = semirings::resolve(c.semiring);
    const Expr e = parse_expr(text, al, *s);
    const Normalizer n(al, s);
    const GuardedSum u = n.hat(e);
    std::vector<Expr> parts;
    for (const auto& g : u.summands) parts.push_back(g.to_expr(*s));
    // Large sums are printed with their shared subterms bound to names.
    const bool shared = tree_size(n.to_expr(u), max_nodes + 1) > max_nodes;
    SharedPrint sp;
    if (shared) {
        sp = print_shared(parts, al, *s);
    } else {
        for (const auto& x : parts) sp.roots.push_back(print(x, al, *s));
    }
    if (c.json) {
        json arr = json::array();
        for (std::size_t i = 0; i < u.summands.size(); ++i) {
            const auto& g = u.summands[i];
            arr.push_back({{"form", g.form() == GuardedExpr::Form::Atom ? "atom" : "span"},
                           {"head", print(g.head(), al)},
                           {"tail", print(g.tail(), al)},
                           {"weight", s->token(g.weight())},
                           {"expr", sp.roots[i]}});
        }
        json bindings = json::object();
        for (const auto& [name, body] : sp.bindings) bindings[name] = body;
        out << json{{"input", print(e, al, *s)}, {"semiring", s->name()}, {"summands", arr}, {"bindings", bindings}}
                   .dump()
            << '\n';
        return exit_ok;
    }
    out << "input: " << print(e, al, *s) << '\n';
    out << "guarded sum over " << s->name() << " with " << u.summands.size() << " summands\n";
    if (u.summands.empty()) {
        out << "0\n";
        return exit_ok;
    }
    if (!shared) {
        out << n.print(u, std::numeric_limits<std::size_t>::max() / 2) << '\n';
        return exit_ok;
    }
    for (std::size_t i = 0; i < sp.roots.size(); ++i) out << (i ? "+ " : "  ") << sp.roots[i] << '\n';
    out << "where\n";
    for (const auto& [name, body] : sp.bindings) out << "  " << name << " = " << body << '\n';
    return exit_ok;
}

int cmd_interp(const Common& c, const std::string& text, bool free, std::ostream& out) {
    const Alphabets al = alphabets_of(c);
    const SemiringRef s = semirings::resolve(c.semiring);
    const Expr e = parse_expr(text, al, *s);
    const TruncatedSeries r = free ? interp_free(e, al, s, c.bound) : interp_guarded(e, al, s, c.bound);
    if (c.json) {
        out << json{{"input", print(e, al, *s)},
                    {"semiring", s->name()},
                    {"carrier", free ? "free" : "guarded"},
                    {"bound", c.bound},
                    {"coefficients", series_json(r, al)}}
                   .dump()
            << '\n';
        return exit_ok;
    }
    out << (free ? "free" : "guarded") << " series of " << print(e, al, *s) << " over " << s->name()
        << ", length <= " << c.bound << ", " << r.support_size() << " nonzero\n";
    out << format_series(r, al);
    return exit_ok;
}

int cmd_equiv(const Common& c, const std::string& t1, const std::string& t2, std::ostream& out) {
    const Alphabets al = alphabets_of(c);
    const SemiringRef s = semirings::resolve(c.semiring);
    const Expr e = parse_expr(t1, al, *s);
    const Expr f = parse_expr(t2, al, *s);
    const EquivVerdict v = bounded_equiv(e, f, al, s, c.bound);
    if (c.json) {
        json j{{"e1", print(e, al, *s)}, {"e2", print(f, al, *s)}, {"semiring", s->name()}, {"bound", c.bound}};
        if (v.agrees()) {
            j["verdict"] = "AgreeUpTo";
        } else {
            j["verdict"] = "Distinguisher";
            j["witness"] = word_text(*v.witness, al);
            j["left"] = s->token(v.left);
            j["right"] = s->token(v.right);
        }
        j["disclaimer"] = equiv_disclaimer;
        out << j.dump() << '\n';
    } else {
        out << v.describe(al, *s) << '\n' << equiv_disclaimer << '\n';
    }
    return v.agrees() ? exit_ok : exit_negative;
}

void emit_matrix(const Matrix& m, const std::vector<std::string>& states, bool as_json, std::ostream& out) {
    if (as_json)
        out << matrix_json(m, states).dump() << '\n';
    else
        out << format_matrix(m, states);
}

int cmd_eval(const Common& c, const std::string& ts_path, const std::string& text, std::ostream& out) {
    const Alphabets al = alphabets_of(c);
    const TransitionSystem ts = load_transition_system(ts_path, al, semirings::resolve(c.semiring));
    const Expr e = parse_expr(text, al, *ts.semiring());
    emit_matrix(eval_M(ts, e), ts.states(), c.json, out);
    return exit_ok;
}

int cmd_run(const Common& c, const std::string& prog_path, const std::string& ts_path, std::ostream& out) {
    const Alphabets al = alphabets_of(c);
    const TransitionSystem ts = load_transition_system(ts_path, al, semirings::resolve(c.semiring));
    const Program p = load_program(prog_path, al, *ts.semiring());
    emit_matrix(run_program(p, ts), ts.states(), c.json, out);
    return exit_ok;
}

int cmd_cayley(const Common& c, const std::string& text, std::ostream& out) {
    const Alphabets al = alphabets_of(c);
    const SemiringRef s = semirings::resolve(c.semiring);
    const Expr e = parse_expr(text, al, *s);
    const AgreementReport r = check_cayley(e, al, s, c.bound);
    if (c.json) {
        json mm = json::array();
        for (const auto& m : r.mismatches)
            mm.push_back({{"row", m.row}, {"column", m.column}, {"series", m.from_series}, {"system", m.from_system}});
        out << json{{"input", print(e, al, *s)},   {"semiring", s->name()},
                    {"bound", c.bound},            {"states", r.states},
                    {"entries", r.entries_compared}, {"mismatches", r.mismatch_count},
                    {"first_mismatches", mm},      {"agree", r.ok()}}
                   .dump()
            << '\n';
    } else {
        out << "cayley check of " << print(e, al, *s) << " over " << s->name() << " at L = " << c.bound << ": "
            << r.states << " states, " << r.entries_compared << " entries compared, " << r.mismatch_count
            << " mismatches\n";
        for (const auto& m : r.mismatches)
            out << "  (" << m.row << ", " << m.column << "): cay = " << m.from_series << ", M = " << m.from_system
                << '\n';
        out << (r.ok() ? "agree" : "disagree") << '\n';
    }
    return r.ok() ? exit_ok : exit_negative;
}

int cmd_selftest(std::uint64_t seed, std::size_t samples, bool as_json, std::ostream& out) {
    const auto reports = selftest(seed, samples);
    bool ok = true;
    if (as_json) {
        json arr = json::array();
        for (const auto& r : reports) {
            arr.push_back(json::parse(r.json()));
            ok = ok && r.ok();
        }
        out << json{{"seed", seed}, {"samples", samples}, {"ok", ok}, {"suites", arr}}.dump() << '\n';
    } else {
        std::size_t failed = 0;
        for (const auto& r : reports) {
            out << r.text();
            if (!r.ok()) ++failed;
        }
        ok = failed == 0;
        out << reports.size() << " suites, " << failed << " failed (seed " << seed << ", " << samples
            << " samples)\n";
    }
    return ok ? exit_ok : exit_negative;
}

int cmd_srp(unsigned days, unsigned price, bool as_json, std::ostream& out) {
    const SkiRental srp = ski_rental(days, price);
    const Elem cost = ski_rental_cost(srp);
    const Expr e = compile_program(srp.program);
    if (as_json) {
        out << json{{"days", days},
                    {"price", price},
                    {"semiring", srp.semiring->name()},
                    {"program", srp.program_text},
                    {"expression", print(e, srp.alphabets, *srp.semiring)},
                    {"optimal_cost", srp.semiring->token(cost)}}
                   .dump()
            << '\n';
    } else {
        out << "program: " << srp.program_text << '\n';
        out << "expression: " << print(e, srp.alphabets, *srp.semiring) << '\n';
        out << "system over " << srp.semiring->name() << " with states 0.." << days << '\n';
        out << "optimal cost " << srp.semiring->token(cost) << '\n';
    }
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
    // -e1 / -e2 are accepted as spelled in the usage examples.
    std::vector<std::string> args;
    for (const auto& a : raw) args.push_back(a == "-e1" ? "--e1" : a == "-e2" ? "--e2" : a);

    CLI::App app{"wkat: finitely weighted Kleene algebra with tests"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every command");

    Common c;
    std::string expr, expr2, file, ts_path, prog_path;
    std::size_t samples = 200, max_nodes = 20000;
    bool free_carrier = false;
    unsigned days = 3, price = 2;

    auto* check = app.add_subcommand("check-semiring", "verify the copi-semiring axioms");
    check->add_option("semiring", file, "built-in name or semiring file")->required();
    check->add_flag("--json", c.json, "machine-readable output");

    auto* normalize = app.add_subcommand("normalize", "print the guarded-sum normal form");
    add_common(normalize, c, false);
    normalize->add_option("-e,--expr", expr, "expression")->required();
    normalize->add_option("--max-nodes", max_nodes, "share subterms when the printed sum is larger")->capture_default_str();

    auto* interp = app.add_subcommand("interp", "print the nonzero coefficients of the series");
    add_common(interp, c, true);
    interp->add_option("-e,--expr", expr, "expression")->required();
    interp->add_flag("--free", free_carrier, "free-monoid interpretation instead of guarded strings");

    auto* equiv = app.add_subcommand("equiv", "bounded equivalence check");
    add_common(equiv, c, true);
    equiv->add_option("--e1", expr, "first expression")->required();
    equiv->add_option("--e2", expr2, "second expression")->required();

    auto* eval = app.add_subcommand("eval", "evaluate an expression on a transition system");
    add_common(eval, c, false);
    eval->add_option("--ts", ts_path, "transition system file")->required();
    eval->add_option("-e,--expr", expr, "expression")->required();

    auto* run = app.add_subcommand("run", "run a weighted program on a transition system");
    add_common(run, c, false);
    run->add_option("--prog", prog_path, "program file")->required();
    run->add_option("--ts", ts_path, "transition system file")->required();

    auto* cayley = app.add_subcommand("cayley-check", "compare cay(G(e)) with M(e) on the Cayley system");
    add_common(cayley, c, true);
    cayley->add_option("-e,--expr", expr, "expression")->required();

    auto* self = app.add_subcommand("selftest", "run every axiom and lemma suite");
    self->add_option("--seed", c.seed, "random seed")->capture_default_str();
    self->add_option("--samples", samples, "samples per suite")->capture_default_str();
    self->add_flag("--json", c.json, "machine-readable output");

    auto* srp = app.add_subcommand("srp", "ski rental: build, run and report the optimal cost");
    srp->add_option("--days", days, "horizon n")->capture_default_str();
    srp->add_option("--price", price, "buy price s")->capture_default_str();
    srp->add_flag("--json", c.json, "machine-readable output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back(); // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return exit_usage;
    }

    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    try {
        if (name == "check-semiring") return cmd_check_semiring(file, c.json, out);
        if (name == "normalize") return cmd_normalize(c, expr, max_nodes, out);
        if (name == "interp") return cmd_interp(c, expr, free_carrier, out);
        if (name == "equiv") return cmd_equiv(c, expr, expr2, out);
        if (name == "eval") return cmd_eval(c, ts_path, expr, out);
        if (name == "run") return cmd_run(c, prog_path, ts_path, out);
        if (name == "cayley-check") return cmd_cayley(c, expr, out);
        if (name == "selftest") return cmd_selftest(c.seed, samples, c.json, out);
        if (name == "srp") return cmd_srp(days, price, c.json, out);
    } catch (const SemiringRequirementError& e) {
        err << name << ": semiring refused: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        err << name << ": parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << name << ": error: " << e.what() << '\n';
        return exit_usage;
    }
    err << "unknown command " << name << '\n';
    return exit_usage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

} // namespace wkat
