#include "wkat/syntax.hpp"

#include "wkat/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace wkat {

namespace {

constexpr std::array<std::string_view, 11> reserved_words{"skip", "abort", "add", "if", "then", "else",
                                                          "while", "do", "choice", "or", "weighted"};

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; });
}

} // namespace

Alphabets::Alphabets(std::vector<std::string> actions, std::vector<std::string> tests)
    : actions_(std::move(actions)), tests_(std::move(tests)) {
    if (actions_.size() > max_actions) throw ResourceError("too many action symbols");
    if (tests_.size() > max_tests) throw ResourceError("too many test symbols");
    std::set<std::string> seen;
    for (const auto* list : {&actions_, &tests_})
        for (const auto& name : *list) {
            if (!is_identifier(name)) throw StructuralError("'" + name + "' is not a valid symbol name");
            if (std::find(reserved_words.begin(), reserved_words.end(), name) != reserved_words.end())
                throw StructuralError("'" + name + "' is a reserved word");
            if (!seen.insert(name).second)
                throw StructuralError("symbol '" + name + "' is declared twice (actions and tests must be disjoint)");
        }
}

std::optional<Symbol> Alphabets::action(std::string_view name) const {
    for (std::size_t i = 0; i < actions_.size(); ++i)
        if (actions_[i] == name) return static_cast<Symbol>(i);
    return std::nullopt;
}

std::optional<Symbol> Alphabets::test(std::string_view name) const {
    for (std::size_t i = 0; i < tests_.size(); ++i)
        if (tests_[i] == name) return static_cast<Symbol>(i);
    return std::nullopt;
}

// ---------------------------------------------------------------- TestExpr

TestExpr TestExpr::letter(Symbol p) { return TestExpr(std::make_shared<const Node>(Node{Kind::Letter, p, {}, {}})); }
TestExpr TestExpr::negate(TestExpr b) { return TestExpr(std::make_shared<const Node>(Node{Kind::Not, 0, b.node_, {}})); }
TestExpr TestExpr::disj(TestExpr b, TestExpr c) {
    return TestExpr(std::make_shared<const Node>(Node{Kind::Or, 0, b.node_, c.node_}));
}
TestExpr TestExpr::conj(TestExpr b, TestExpr c) {
    return TestExpr(std::make_shared<const Node>(Node{Kind::And, 0, b.node_, c.node_}));
}
TestExpr TestExpr::zero() {
    static const TestExpr z(std::make_shared<const Node>(Node{Kind::Zero, 0, {}, {}}));
    return z;
}
TestExpr TestExpr::one() {
    static const TestExpr o(std::make_shared<const Node>(Node{Kind::One, 0, {}, {}}));
    return o;
}

bool TestExpr::in_bnf() const {
    switch (kind()) {
    case Kind::Letter:
    case Kind::Zero:
    case Kind::One: return true;
    case Kind::Not: return operand().kind() == Kind::Letter;
    case Kind::Or:
    case Kind::And: return left().in_bnf() && right().in_bnf();
    }
    return false;
}

bool operator==(const TestExpr& a, const TestExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case TestExpr::Kind::Letter: return a.symbol() == b.symbol();
    case TestExpr::Kind::Zero:
    case TestExpr::Kind::One: return true;
    case TestExpr::Kind::Not: return a.operand() == b.operand();
    case TestExpr::Kind::Or:
    case TestExpr::Kind::And: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

// -------------------------------------------------------------------- Expr

Expr Expr::action(Symbol a) {
    Node n{Kind::Action};
    n.symbol = a;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::test(TestExpr b) {
    Node n{Kind::Test};
    n.test = std::move(b);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::scalar(Expr e, Elem s) {
    Node n{Kind::Scalar};
    n.weight = s;
    n.depth = e.depth() + 1;
    n.left = e.node_;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::sum(Expr e, Expr f) {
    if (e.is_test() && f.is_test()) return test(TestExpr::disj(e.test_expr(), f.test_expr()));
    Node n{Kind::Sum};
    n.depth = std::max(e.depth(), f.depth()) + 1;
    n.left = e.node_;
    n.right = f.node_;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::product(Expr e, Expr f) {
    if (e.is_test() && f.is_test()) return test(TestExpr::conj(e.test_expr(), f.test_expr()));
    Node n{Kind::Product};
    n.depth = std::max(e.depth(), f.depth()) + 1;
    n.left = e.node_;
    n.right = f.node_;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::star(Expr e) {
    Node n{Kind::Star};
    n.depth = e.depth() + 1;
    n.left = e.node_;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::zero() {
    static const Expr z = test(TestExpr::zero());
    return z;
}

Expr Expr::one() {
    static const Expr o = test(TestExpr::one());
    return o;
}

std::size_t Expr::dag_size() const {
    std::unordered_set<const void*> seen;
    std::vector<const Node*> stack{node_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
    return seen.size();
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.depth() != b.depth()) return false;
    switch (a.kind()) {
    case Expr::Kind::Action: return a.symbol() == b.symbol();
    case Expr::Kind::Test: return a.test_expr() == b.test_expr();
    case Expr::Kind::Scalar: return a.weight() == b.weight() && a.operand() == b.operand();
    case Expr::Kind::Star: return a.operand() == b.operand();
    case Expr::Kind::Sum:
    case Expr::Kind::Product: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

std::optional<TestExpr> as_test(const Expr& e) {
    if (e.is_test()) return e.test_expr();
    return std::nullopt;
}

// ------------------------------------------------------------------- atoms

Atom::Atom(std::uint32_t code, unsigned width) : code_(code), width_(width) {
    if (width > Alphabets::max_tests) throw ResourceError("atom width exceeds the test alphabet cap");
    if (width < 32 && code >= (1U << width)) throw StructuralError("atom code out of range");
}

std::size_t atom_count(const Alphabets& alphabets, std::size_t limit) {
    const std::size_t n = alphabets.tests().size();
    if (n > limit)
        throw ResourceError(std::to_string(n) + " test symbols exceed the atom limit of " + std::to_string(limit));
    return std::size_t{1} << n;
}

std::vector<Atom> enumerate_atoms(const Alphabets& alphabets, std::size_t limit) {
    const std::size_t count = atom_count(alphabets, limit);
    const auto width = static_cast<unsigned>(alphabets.tests().size());
    std::vector<Atom> atoms;
    atoms.reserve(count);
    for (std::size_t c = 0; c < count; ++c) atoms.emplace_back(static_cast<std::uint32_t>(c), width);
    return atoms;
}

bool atom_satisfies(const Atom& atom, const TestExpr& b) {
    switch (b.kind()) {
    case TestExpr::Kind::Letter: return atom.holds(b.symbol());
    case TestExpr::Kind::Not: return !atom_satisfies(atom, b.operand());
    case TestExpr::Kind::Or: return atom_satisfies(atom, b.left()) || atom_satisfies(atom, b.right());
    case TestExpr::Kind::And: return atom_satisfies(atom, b.left()) && atom_satisfies(atom, b.right());
    case TestExpr::Kind::Zero: return false;
    case TestExpr::Kind::One: return true;
    }
    return false;
}

namespace {

TestExpr bnf(const TestExpr& b, bool negated) {
    using K = TestExpr::Kind;
    switch (b.kind()) {
    case K::Letter: return negated ? TestExpr::negate(b) : b;
    case K::Zero: return negated ? TestExpr::one() : b;
    case K::One: return negated ? TestExpr::zero() : b;
    case K::Not: return bnf(b.operand(), !negated);
    case K::Or:
        return negated ? TestExpr::conj(bnf(b.left(), true), bnf(b.right(), true))
                       : TestExpr::disj(bnf(b.left(), false), bnf(b.right(), false));
    case K::And:
        return negated ? TestExpr::disj(bnf(b.left(), true), bnf(b.right(), true))
                       : TestExpr::conj(bnf(b.left(), false), bnf(b.right(), false));
    }
    return b;
}

} // namespace

TestExpr to_bnf(const TestExpr& b) {
    if (b.in_bnf()) return b;
    return bnf(b, false);
}

Expr to_bnf(const Expr& e) {
    std::unordered_map<const void*, Expr> memo;
    std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        Expr r = x;
        switch (x.kind()) {
        case Expr::Kind::Action: break;
        case Expr::Kind::Test:
            if (!x.test_expr().in_bnf()) r = Expr::test(to_bnf(x.test_expr()));
            break;
        case Expr::Kind::Scalar: {
            Expr o = go(x.operand());
            if (o.id() != x.operand().id()) r = Expr::scalar(o, x.weight());
            break;
        }
        case Expr::Kind::Star: {
            Expr o = go(x.operand());
            if (o.id() != x.operand().id()) r = Expr::star(o);
            break;
        }
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            Expr l = go(x.left());
            Expr rr = go(x.right());
            if (l.id() != x.left().id() || rr.id() != x.right().id())
                r = x.kind() == Expr::Kind::Sum ? Expr::sum(l, rr) : Expr::product(l, rr);
            break;
        }
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return go(e);
}

TestExpr atom_test(const Atom& atom) {
    if (atom.width() == 0) return TestExpr::one();
    std::optional<TestExpr> t;
    for (Symbol p = 0; p < atom.width(); ++p) {
        TestExpr lit = atom.holds(p) ? TestExpr::letter(p) : TestExpr::negate(TestExpr::letter(p));
        t = t ? TestExpr::conj(*t, lit) : lit;
    }
    return *t;
}

// ---------------------------------------------------------------- printing

namespace {

// Precedence levels shared by tests and expressions.
constexpr int lvl_sum = 0;
constexpr int lvl_seq = 1;
constexpr int lvl_post = 2;
constexpr int lvl_prim = 3;

void print_test(const TestExpr& b, const Alphabets& al, int ctx, std::string& out) {
    using K = TestExpr::Kind;
    switch (b.kind()) {
    case K::Letter: out += al.tests().at(b.symbol()); return;
    case K::Zero: out += '0'; return;
    case K::One: out += '1'; return;
    case K::Not:
        out += '~';
        print_test(b.operand(), al, lvl_prim, out);
        return;
    case K::Or:
    case K::And: {
        const bool sum = b.kind() == K::Or;
        const int mine = sum ? lvl_sum : lvl_seq;
        if (ctx > mine) out += '(';
        print_test(b.left(), al, mine, out);
        out += sum ? " + " : " ";
        print_test(b.right(), al, mine + 1, out);
        if (ctx > mine) out += ')';
        return;
    }
    }
}

using NameMap = std::unordered_map<const void*, std::string>;

void print_expr(const Expr& e, const Alphabets& al, const Semiring& s, int ctx, std::string& out,
                const NameMap* names = nullptr, bool top = true) {
    using K = Expr::Kind;
    if (names && !top) {
        if (auto it = names->find(e.id()); it != names->end()) {
            out += it->second;
            return;
        }
    }
    switch (e.kind()) {
    case K::Action: out += al.actions().at(e.symbol()); return;
    case K::Test: {
        // A compound test is a sum or product and needs the same bracketing.
        const auto tk = e.test_expr().kind();
        const bool compound = tk == TestExpr::Kind::Or || tk == TestExpr::Kind::And;
        const bool wrap = compound && ctx >= lvl_post;
        if (wrap) out += '(';
        print_test(e.test_expr(), al, wrap ? lvl_sum : ctx, out);
        if (wrap) out += ')';
        return;
    }
    case K::Scalar:
        print_expr(e.operand(), al, s, lvl_post, out, names, false);
        out += "@{";
        out += s.token(e.weight());
        out += '}';
        return;
    case K::Star:
        print_expr(e.operand(), al, s, lvl_post, out, names, false);
        out += '*';
        return;
    case K::Sum:
    case K::Product: {
        const bool sum = e.kind() == K::Sum;
        const int mine = sum ? lvl_sum : lvl_seq;
        if (ctx > mine) out += '(';
        print_expr(e.left(), al, s, mine, out, names, false);
        out += sum ? " + " : " ";
        print_expr(e.right(), al, s, mine + 1, out, names, false);
        if (ctx > mine) out += ')';
        return;
    }
    }
}

} // namespace

std::string print(const TestExpr& b, const Alphabets& alphabets) {
    std::string out;
    print_test(b, alphabets, lvl_sum, out);
    return out;
}

std::string print(const Expr& e, const Alphabets& alphabets, const Semiring& semiring) {
    std::string out;
    print_expr(e, alphabets, semiring, lvl_sum, out);
    return out;
}

SharedPrint print_shared(const std::vector<Expr>& roots, const Alphabets& alphabets, const Semiring& semiring,
                         std::size_t min_size) {
    std::unordered_map<const void*, std::size_t> refs;
    std::unordered_map<const void*, std::size_t> size;
    std::vector<Expr> post; // children before parents
    std::function<void(const Expr&)> visit = [&](const Expr& e) {
        if (refs[e.id()]++ > 0) return;
        std::size_t n = 1;
        auto child = [&](const Expr& c) {
            visit(c);
            n += size[c.id()];
        };
        switch (e.kind()) {
        case Expr::Kind::Action:
        case Expr::Kind::Test: break;
        case Expr::Kind::Scalar:
        case Expr::Kind::Star: child(e.operand()); break;
        case Expr::Kind::Sum:
        case Expr::Kind::Product:
            child(e.left());
            child(e.right());
            break;
        }
        size[e.id()] = std::min<std::size_t>(n, std::size_t{1} << 40);
        post.push_back(e);
    };
    for (const auto& r : roots) visit(r);

    NameMap names;
    std::unordered_map<std::string, std::string> by_text;
    SharedPrint out;
    for (const Expr& e : post) {
        if (refs[e.id()] < 2 || size[e.id()] <= min_size) continue;
        std::string body;
        print_expr(e, alphabets, semiring, lvl_sum, body, &names, true);
        if (auto it = by_text.find(body); it != by_text.end()) {
            names.emplace(e.id(), it->second);
            continue;
        }
        const std::string name = "$" + std::to_string(out.bindings.size() + 1);
        by_text.emplace(body, name);
        out.bindings.emplace_back(name, std::move(body));
        names.emplace(e.id(), name);
    }
    for (const auto& r : roots) {
        std::string text;
        print_expr(r, alphabets, semiring, lvl_sum, text, &names, false);
        out.roots.push_back(std::move(text));
    }
    return out;
}

std::string print(const Atom& atom, const Alphabets& alphabets) {
    std::string out = "<";
    for (Symbol p = 0; p < atom.width(); ++p) {
        if (p) out += ',';
        if (!atom.holds(p)) out += '~';
        out += alphabets.tests().at(p);
    }
    out += '>';
    return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, const Alphabets& al, const Semiring& s) : text_(text), al_(al), s_(s) {}

    Expr run() {
        Expr e = sum();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static bool starts_prim(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '0' || c == '1' || c == '(';
    }

    Expr sum() {
        Expr e = seq();
        while (peek() == '+') {
            ++pos_;
            e = Expr::sum(e, seq());
        }
        return e;
    }

    Expr seq() {
        Expr e = post();
        for (;;) {
            const char c = peek();
            if (c == ';') {
                ++pos_;
                e = Expr::product(e, post());
            } else if (starts_prim(c)) {
                e = Expr::product(e, post());
            } else {
                return e;
            }
        }
    }

    Expr post() {
        Expr e = prim();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                e = Expr::star(e);
            } else if (c == '@') {
                ++pos_;
                if (peek() != '{') fail("expected '{' after '@'");
                ++pos_;
                const std::size_t start = pos_;
                const std::size_t close = text_.find('}', pos_);
                if (close == std::string_view::npos) fail("unterminated weight literal");
                std::string token(text_.substr(start, close - start));
                auto b = token.find_first_not_of(" \t");
                auto t = token.find_last_not_of(" \t");
                token = b == std::string::npos ? "" : token.substr(b, t - b + 1);
                auto w = s_.find(token);
                if (!w) {
                    pos_ = start;
                    fail("'" + token + "' is not an element of semiring " + s_.name());
                }
                pos_ = close + 1;
                e = Expr::scalar(e, *w);
            } else {
                return e;
            }
        }
    }

    Expr prim() {
        const char c = peek();
        const std::size_t start = pos_;
        if (c == '\0') fail("unexpected end of expression");
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (c == ')') fail("unbalanced ')'");
        if (c == '~') {
            ++pos_;
            Expr e = prim();
            auto b = as_test(e);
            if (!b) {
                pos_ = start;
                fail("'~' applies to tests only");
            }
            return Expr::test(TestExpr::negate(*b));
        }
        if (c == '0' || c == '1') {
            ++pos_;
            if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                pos_ = start;
                fail("unexpected numeral");
            }
            return c == '0' ? Expr::zero() : Expr::one();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_' ||
                                          text_[end] == '\''))
                ++end;
            const std::string_view name = text_.substr(pos_, end - pos_);
            if (auto e = symbol(name)) {
                pos_ = end;
                return *e;
            }
            // "ab" as a run of one-letter symbols.
            std::optional<Expr> run;
            for (char ch : name) {
                auto e = symbol(std::string_view(&ch, 1));
                if (!e) fail("unknown symbol '" + std::string(name) + "'");
                run = run ? Expr::product(*run, *e) : *e;
            }
            pos_ = end;
            return *run;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::optional<Expr> symbol(std::string_view name) const {
        if (auto a = al_.action(name)) return Expr::action(*a);
        if (auto p = al_.test(name)) return Expr::test(TestExpr::letter(*p));
        return std::nullopt;
    }

    std::string_view text_;
    const Alphabets& al_;
    const Semiring& s_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse_expr(std::string_view text, const Alphabets& alphabets, const Semiring& semiring) {
    return ExprParser(text, alphabets, semiring).run();
}

} // namespace wkat
