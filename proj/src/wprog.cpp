#include "wkat/wprog.hpp"

#include "wkat/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace wkat {

Program Program::skip() { return Program(std::make_shared<const Node>(Node{Kind::Skip})); }
Program Program::abort() { return Program(std::make_shared<const Node>(Node{Kind::Abort})); }

Program Program::action(Symbol a) {
    Node n{Kind::Action};
    n.symbol = a;
    return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::weight(Elem s) {
    Node n{Kind::Weight};
    n.weight = s;
    return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::seq(Program p, Program q) {
    Node n{Kind::Seq};
    n.children = {std::move(p), std::move(q)};
    return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::if_then_else(TestExpr b, Program p, Program q) {
    Node n{Kind::If};
    n.guard = std::move(b);
    n.children = {std::move(p), std::move(q)};
    return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::while_do(TestExpr b, Program p) {
    Node n{Kind::While};
    n.guard = std::move(b);
    n.children = {std::move(p)};
    return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::choice(Program p, Program q) {
    Node n{Kind::Choice};
    n.children = {std::move(p), std::move(q)};
    return Program(std::make_shared<const Node>(std::move(n)));
}

Program Program::weighted(std::vector<std::pair<Elem, Program>> branches) {
    if (branches.empty()) throw StructuralError("weighted choice without branches");
    Node n{Kind::Weighted};
    for (auto& [s, p] : branches) {
        n.weights.push_back(s);
        n.children.push_back(std::move(p));
    }
    return Program(std::make_shared<const Node>(std::move(n)));
}

// ------------------------------------------------------------------ parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class ProgramParser {
public:
    ProgramParser(std::string_view text, const Alphabets& al, const Semiring& s) : text_(text), al_(al), s_(s) {}

    Program parse() {
        Program p = sequence();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("program: " + msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_char(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!at_char(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string peek_word() {
        skip_ws();
        std::size_t end = pos_;
        if (end < text_.size() && ident_start(text_[end]))
            while (end < text_.size() && ident_char(text_[end])) ++end;
        return std::string(text_.substr(pos_, end - pos_));
    }

    std::string word() {
        std::string w = peek_word();
        pos_ += w.size();
        return w;
    }

    void keyword(const char* kw) {
        if (word() != kw) fail(std::string("expected '") + kw + "'");
    }

    // add {s} / add s / {s}: / s:
    Elem weight_token() {
        skip_ws();
        const bool braced = at_char('{');
        if (braced) ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '}' && text_[pos_] != ';' && text_[pos_] != ':')
            ++pos_;
        const std::string tok(text_.substr(start, pos_ - start));
        if (tok.empty()) fail("expected a weight");
        auto x = s_.find(tok);
        if (!x) {
            pos_ = start;
            fail("unknown weight '" + tok + "' in " + s_.name());
        }
        if (braced) expect('}');
        return *x;
    }

    // The test runs up to the next `then` or `do` keyword.
    TestExpr guard(const char* stop) {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t i = pos_;
        while (i < text_.size()) {
            if (ident_start(text_[i]) && (i == 0 || !ident_char(text_[i - 1]))) {
                std::size_t end = i;
                while (end < text_.size() && ident_char(text_[end])) ++end;
                if (text_.substr(i, end - i) == stop) break;
                i = end;
            } else {
                ++i;
            }
        }
        if (i >= text_.size()) fail(std::string("expected '") + stop + "'");
        const std::string_view src = text_.substr(start, i - start);
        Expr e = Expr::zero();
        try {
            e = parse_expr(src, al_, s_);
        } catch (const ParseError& err) {
            throw ParseError(std::string("program guard: ") + err.what(), start + err.position());
        }
        auto b = as_test(e);
        if (!b) fail("guard is not a test");
        pos_ = i;
        return *b;
    }

    Program sequence() {
        Program p = statement();
        while (at_char(';')) {
            ++pos_;
            skip_ws();
            if (pos_ == text_.size() || text_[pos_] == '}') break;
            p = Program::seq(p, statement());
        }
        return p;
    }

    Program block() {
        if (at_char('{')) {
            ++pos_;
            if (at_char('}')) {
                ++pos_;
                return Program::skip();
            }
            Program p = sequence();
            expect('}');
            return p;
        }
        return statement();
    }

    Program statement() {
        skip_ws();
        if (at_char('{')) return block();
        const std::size_t start = pos_;
        const std::string w = word();
        if (w.empty()) fail("expected a statement");
        if (w == "skip") return Program::skip();
        if (w == "abort") return Program::abort();
        if (w == "add") return Program::weight(weight_token());
        if (w == "if") {
            TestExpr b = guard("then");
            keyword("then");
            Program p = block();
            keyword("else");
            Program q = block();
            return Program::if_then_else(b, p, q);
        }
        if (w == "while") {
            TestExpr b = guard("do");
            keyword("do");
            return Program::while_do(b, block());
        }
        if (w == "choice") {
            Program p = block();
            keyword("or");
            return Program::choice(p, block());
        }
        if (w == "weighted") {
            expect('{');
            std::vector<std::pair<Elem, Program>> branches;
            for (;;) {
                const Elem s = weight_token();
                expect(':');
                branches.emplace_back(s, block());
                if (at_char(';')) {
                    ++pos_;
                    if (at_char('}')) break;
                    continue;
                }
                break;
            }
            expect('}');
            return Program::weighted(std::move(branches));
        }
        if (auto a = al_.action(w)) return Program::action(*a);
        pos_ = start;
        fail("unknown statement or action '" + w + "'");
    }

    std::string_view text_;
    const Alphabets& al_;
    const Semiring& s_;
    std::size_t pos_ = 0;
};

} // namespace

Program parse_program(std::string_view text, const Alphabets& alphabets, const Semiring& semiring) {
    return ProgramParser(text, alphabets, semiring).parse();
}

Program load_program(const std::string& path, const Alphabets& alphabets, const Semiring& semiring) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open program file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str(), alphabets, semiring);
}

Expr compile_program(const Program& p) {
    using K = Program::Kind;
    const auto& c = p.children();
    switch (p.kind()) {
    case K::Skip: return Expr::one();
    case K::Abort: return Expr::zero();
    case K::Action: return Expr::action(p.symbol());
    case K::Weight: return Expr::scalar(Expr::one(), p.weight_value());
    case K::Seq: return Expr::product(compile_program(c[0]), compile_program(c[1]));
    case K::If:
        return Expr::sum(Expr::product(Expr::test(p.guard()), compile_program(c[0])),
                         Expr::product(Expr::test(TestExpr::negate(p.guard())), compile_program(c[1])));
    case K::While:
        return Expr::product(Expr::star(Expr::product(Expr::test(p.guard()), compile_program(c[0]))),
                             Expr::test(TestExpr::negate(p.guard())));
    case K::Choice: return Expr::sum(compile_program(c[0]), compile_program(c[1]));
    case K::Weighted: {
        Expr out = Expr::scalar(compile_program(c[0]), p.weights()[0]);
        for (std::size_t i = 1; i < c.size(); ++i)
            out = Expr::sum(out, Expr::scalar(compile_program(c[i]), p.weights()[i]));
        return out;
    }
    }
    throw StructuralError("unknown program node");
}

Matrix run_program(const Program& p, const TransitionSystem& ts) { return eval_M(ts, compile_program(p)); }

std::string print(const Program& p, const Alphabets& alphabets, const Semiring& semiring) {
    using K = Program::Kind;
    const auto& c = p.children();
    auto blk = [&](const Program& q) { return "{ " + print(q, alphabets, semiring) + " }"; };
    switch (p.kind()) {
    case K::Skip: return "skip";
    case K::Abort: return "abort";
    case K::Action: return alphabets.actions().at(p.symbol());
    case K::Weight: return "add {" + semiring.token(p.weight_value()) + "}";
    case K::Seq: return print(c[0], alphabets, semiring) + "; " + print(c[1], alphabets, semiring);
    case K::If: return "if " + print(p.guard(), alphabets) + " then " + blk(c[0]) + " else " + blk(c[1]);
    case K::While: return "while " + print(p.guard(), alphabets) + " do " + blk(c[0]);
    case K::Choice: return "choice " + blk(c[0]) + " or " + blk(c[1]);
    case K::Weighted: {
        std::string out = "weighted { ";
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += " ; ";
            out += "{" + semiring.token(p.weights()[i]) + "}: " + blk(c[i]);
        }
        return out + " }";
    }
    }
    throw StructuralError("unknown program node");
}

SkiRental ski_rental(unsigned days, unsigned price) {
    if (days + price + 1 > Semiring::max_elements - 1) throw ResourceError("ski rental instance too large");
    Alphabets al({"a", "b"}, {"p"});
    SemiringRef s = semirings::tropical(std::max(days + price + 1, 2u));
    std::string text = "while p do { a; choice { add {1} } or { add {" + std::to_string(price) + "}; b } }";
    std::vector<std::string> states;
    for (unsigned k = 0; k <= days; ++k) states.push_back(std::to_string(k));
    TransitionSystem ts(al, s, states);
    for (unsigned k = 0; k <= days; ++k) {
        if (k > 0) ts.rel(0).set(k, k - 1, s->one());
        ts.rel(1).set(k, 0, s->one());
        ts.sat(0)[k] = k > 0;
    }
    Program prog = parse_program(text, al, *s);
    return {al, s, text, prog, ts};
}

Elem ski_rental_cost(const SkiRental& srp) {
    const Matrix m = run_program(srp.program, srp.system);
    return m.at(srp.system.size() - 1, 0);
}

} // namespace wkat
