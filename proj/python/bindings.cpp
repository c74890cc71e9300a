#include "wkat/cli.hpp"
#include "wkat/equiv.hpp"
#include "wkat/error.hpp"
#include "wkat/normal_form.hpp"
#include "wkat/relational.hpp"
#include "wkat/wprog.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace wkat;

namespace {

struct PySemiring {
    SemiringRef ref;

    [[nodiscard]] const Semiring& operator*() const { return *ref; }
    [[nodiscard]] const Semiring* operator->() const { return ref.get(); }
};

// Expressions are handed to Python together with the context they were parsed in.
struct PyExpr {
    Expr expr;
    Alphabets alphabets;
    SemiringRef semiring;

    [[nodiscard]] std::string str() const { return print(expr, alphabets, *semiring); }
};

PySemiring semiring_arg(const std::string& name_or_path) { return {semirings::resolve(name_or_path)}; }

PyExpr parse(const std::string& text, const std::vector<std::string>& actions, const std::vector<std::string>& tests,
             const std::string& semiring) {
    Alphabets al(actions, tests);
    SemiringRef s = semirings::resolve(semiring);
    Expr e = parse_expr(text, al, *s);
    return {e, al, s};
}

void same_context(const PyExpr& a, const PyExpr& b) {
    if (!(a.alphabets == b.alphabets) || !(*a.semiring == *b.semiring))
        throw MismatchError("expressions were parsed over different alphabets or semirings");
}

std::vector<std::tuple<std::string, std::string, std::string>> matrix_entries(const Matrix& m,
                                                                             const std::vector<std::string>& states) {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, x] : m.row(i)) out.emplace_back(states[i], states[j], m.semiring()->token(x));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finitely weighted Kleene algebra with tests";

    // Translators run newest first, so the base class goes first.
    const auto& base = py::register_exception<Error>(m, "WkatError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<SemiringRequirementError>(m, "SemiringRequirementError", base.ptr());

    py::class_<PySemiring>(m, "Semiring")
        .def_property_readonly("name", [](const PySemiring& s) { return s->name(); })
        .def_property_readonly("elements", [](const PySemiring& s) { return s->elements(); })
        .def_property_readonly("zero", [](const PySemiring& s) { return s->token(s->zero()); })
        .def_property_readonly("one", [](const PySemiring& s) { return s->token(s->one()); })
        .def("add", [](const PySemiring& s, const std::string& x, const std::string& y) {
            return s->token(s->add(s->element(x), s->element(y)));
        })
        .def("mul", [](const PySemiring& s, const std::string& x, const std::string& y) {
            return s->token(s->mul(s->element(x), s->element(y)));
        })
        .def("leq", [](const PySemiring& s, const std::string& x, const std::string& y) {
            return s->leq(s->element(x), s->element(y));
        })
        .def("star", [](const PySemiring& s, const std::string& x) { return s->token(s->star(s->element(x))); })
        .def("__repr__", [](const PySemiring& s) { return "<Semiring " + s->name() + ">"; });

    m.def("semiring", &semiring_arg, py::arg("name_or_path"), "Built-in semiring by name, or a semiring file.");
    m.def(
        "parse_semiring", [](const std::string& text) { return PySemiring{semirings::parse_string(text)}; },
        py::arg("text"));
    m.def("builtins", [] {
        std::vector<PySemiring> out;
        for (auto& s : semirings::builtins()) out.push_back({s});
        return out;
    });

    m.def(
        "verify_copi",
        [](const PySemiring& s) {
            std::vector<py::dict> out;
            for (const auto& c : verify_copi(*s).checks) {
                py::dict d;
                d["name"] = c.name;
                d["required"] = c.required;
                d["passed"] = c.passed;
                std::vector<std::string> w;
                for (Elem x : c.witness) w.push_back(s->token(x));
                d["witness"] = w;
                out.push_back(d);
            }
            return out;
        },
        py::arg("semiring"));
    m.def("is_copi", [](const PySemiring& s) { return verify_copi(*s).ok(); }, py::arg("semiring"));
    m.def(
        "scalar_star", [](const PySemiring& s, const std::string& x) { return scalar_star(Weight(s.ref, s->element(x))).token(); },
        py::arg("semiring"), py::arg("element"));

    py::class_<PyExpr>(m, "Expr")
        .def_property_readonly("actions", [](const PyExpr& e) { return e.alphabets.actions(); })
        .def_property_readonly("tests", [](const PyExpr& e) { return e.alphabets.tests(); })
        .def_property_readonly("semiring", [](const PyExpr& e) { return PySemiring{e.semiring}; })
        .def("__str__", &PyExpr::str)
        .def("__repr__", [](const PyExpr& e) { return "<Expr " + e.str() + ">"; })
        .def("__eq__", [](const PyExpr& a, const PyExpr& b) { return a.expr == b.expr; });

    m.def("parse", &parse, py::arg("text"), py::arg("actions") = std::vector<std::string>{"a", "b", "c"},
          py::arg("tests") = std::vector<std::string>{"p", "q"}, py::arg("semiring") = "BOOL",
          "Parse an expression over the given alphabets and semiring.");

    m.def(
        "interp",
        [](const PyExpr& e, std::size_t bound, bool free) {
            const TruncatedSeries r = free ? interp_free(e.expr, e.alphabets, e.semiring, bound)
                                           : interp_guarded(e.expr, e.alphabets, e.semiring, bound);
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& [w, x] : r.sorted())
                out.emplace_back(format_word(w, r.spec(), e.alphabets), e.semiring->token(x));
            return out;
        },
        py::arg("expr"), py::arg("bound") = default_bound, py::arg("free") = false,
        "Nonzero coefficients up to the bound, in canonical word order.");

    m.def(
        "normalize",
        [](const PyExpr& e) { return PyExpr{normalize(e.expr, e.alphabets, e.semiring), e.alphabets, e.semiring}; },
        py::arg("expr"), "The guarded-sum normal form as an expression.");
    m.def(
        "hat_summands",
        [](const PyExpr& e) {
            const Normalizer n(e.alphabets, e.semiring);
            std::vector<std::string> out;
            for (const auto& g : n.hat(e.expr).summands) out.push_back(print(g.to_expr(*e.semiring), e.alphabets, *e.semiring));
            return out;
        },
        py::arg("expr"));

    m.def(
        "equiv",
        [](const PyExpr& a, const PyExpr& b, std::size_t bound) {
            same_context(a, b);
            const EquivVerdict v = bounded_equiv(a.expr, b.expr, a.alphabets, a.semiring, bound);
            return std::make_pair(v.agrees(), v.describe(a.alphabets, *a.semiring));
        },
        py::arg("e1"), py::arg("e2"), py::arg("bound") = default_bound,
        "(agrees, description); agreement is evidence up to the bound only.");

    m.def(
        "eval",
        [](const std::string& ts_text, const PyExpr& e) {
            const TransitionSystem ts = parse_transition_system_string(ts_text, e.alphabets, e.semiring);
            return matrix_entries(eval_M(ts, e.expr), ts.states());
        },
        py::arg("system"), py::arg("expr"), "Nonzero (from, to, weight) entries of M(e).");

    m.def(
        "run_program",
        [](const std::string& program, const std::string& ts_text, const std::vector<std::string>& actions,
           const std::vector<std::string>& tests, const std::string& semiring) {
            const Alphabets al(actions, tests);
            const TransitionSystem ts = parse_transition_system_string(ts_text, al, semirings::resolve(semiring));
            const Program p = parse_program(program, al, *ts.semiring());
            return matrix_entries(run_program(p, ts), ts.states());
        },
        py::arg("program"), py::arg("system"), py::arg("actions") = std::vector<std::string>{"a", "b", "c"},
        py::arg("tests") = std::vector<std::string>{"p", "q"}, py::arg("semiring") = "BOOL");

    m.def(
        "cayley_check",
        [](const PyExpr& e, std::size_t bound) { return check_cayley(e.expr, e.alphabets, e.semiring, bound).ok(); },
        py::arg("expr"), py::arg("bound") = 3);

    m.def(
        "ski_rental",
        [](unsigned days, unsigned price) {
            const SkiRental srp = ski_rental(days, price);
            return std::stoi(srp.semiring->token(ski_rental_cost(srp)));
        },
        py::arg("days"), py::arg("price"), "Optimal ski rental cost.");

    m.def(
        "selftest",
        [](std::uint64_t seed, std::size_t samples) {
            bool ok = true;
            for (const auto& r : selftest(seed, samples)) ok = ok && r.ok();
            return ok;
        },
        py::arg("seed") = 42, py::arg("samples") = 20);

    m.def(
        "cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "wkat");
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a command line; returns (exit code, stdout, stderr).");
}
