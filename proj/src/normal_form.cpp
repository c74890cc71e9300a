#include "wkat/normal_form.hpp"

#include "wkat/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace wkat {

GuardedExpr GuardedExpr::zero(Elem one) { return {Form::Zero, {}, {}, std::nullopt, one}; }
GuardedExpr GuardedExpr::atom(Atom g, Elem s) { return {Form::Atom, g, g, std::nullopt, s}; }
GuardedExpr GuardedExpr::span(Atom g, Expr inner, Atom h, Elem s) { return {Form::Span, g, h, std::move(inner), s}; }

Atom GuardedExpr::head() const {
    if (form_ == Form::Zero) throw StructuralError("the zero guarded expression has no head");
    return head_;
}

Atom GuardedExpr::tail() const {
    if (form_ == Form::Zero) throw StructuralError("the zero guarded expression has no tail");
    return tail_;
}

const Expr& GuardedExpr::inner() const {
    if (form_ != Form::Span) throw StructuralError("only span forms have an inner expression");
    return *inner_;
}

std::optional<Expr> GuardedExpr::body() const {
    if (form_ != Form::Span) return std::nullopt;
    return Expr::product(*inner_, Expr::test(atom_test(tail_)));
}

Expr GuardedExpr::to_expr(const Semiring& s) const {
    Expr e = Expr::zero();
    switch (form_) {
    case Form::Zero: return Expr::scalar(Expr::zero(), s.one());
    case Form::Atom: e = Expr::test(atom_test(head_)); break;
    case Form::Span:
        e = Expr::product(Expr::product(Expr::test(atom_test(head_)), *inner_), Expr::test(atom_test(tail_)));
        break;
    }
    return weight_ == s.one() ? e : Expr::scalar(e, weight_);
}

// --------------------------------------------------------------- Normalizer

Normalizer::Normalizer(Alphabets alphabets, SemiringRef semiring)
    : alphabets_(std::move(alphabets)), semiring_(std::move(semiring)), atoms_(enumerate_atoms(alphabets_)) {
    if (!semiring_) throw MismatchError("normalizer without a semiring");
    require_integral(*semiring_);
    for (const Atom& g : atoms_) atom_exprs_.push_back(Expr::test(atom_test(g)));
}

Expr Normalizer::atom_expr(const Atom& g) const { return atom_exprs_.at(g.code()); }

GuardedExpr Normalizer::bullet(const GuardedExpr& e, const GuardedExpr& f) const {
    const Semiring& s = *semiring_;
    using F = GuardedExpr::Form;
    if (e.form() == F::Zero || f.form() == F::Zero || e.tail() != f.head()) return GuardedExpr::zero(s.one());
    const Elem w = s.mul(e.weight(), f.weight());
    if (e.form() == F::Atom) {
        if (f.form() == F::Atom) return GuardedExpr::atom(e.head(), w);
        return GuardedExpr::span(e.head(), f.inner(), f.tail(), w);
    }
    if (f.form() == F::Atom) return GuardedExpr::span(e.head(), e.inner(), e.tail(), w);
    // e body(f) = (G x H) (y K): the shared atom H stays between the bodies.
    Expr joined = alphabets_.tests().empty()
                      ? Expr::product(e.inner(), f.inner())
                      : Expr::product(Expr::product(e.inner(), atom_expr(e.tail())), f.inner());
    return GuardedExpr::span(e.head(), std::move(joined), f.tail(), w);
}

GuardedSum Normalizer::canonicalize(const std::vector<GuardedExpr>& summands) const {
    const Semiring& s = *semiring_;
    using F = GuardedExpr::Form;
    // key: (head, is_span, tail)
    std::map<std::tuple<std::uint32_t, int, std::uint32_t>, GuardedExpr> merged;
    for (const auto& g : summands) {
        if (g.form() == F::Zero || g.weight() == s.zero()) continue;
        const auto key = std::tuple{g.head().code(), g.form() == F::Span ? 1 : 0, g.tail().code()};
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, g);
            continue;
        }
        const GuardedExpr& old = it->second;
        if (g.form() == F::Atom) {
            it->second = GuardedExpr::atom(g.head(), s.add(old.weight(), g.weight()));
        } else if (old.inner().id() == g.inner().id()) {
            it->second = GuardedExpr::span(g.head(), g.inner(), g.tail(), s.add(old.weight(), g.weight()));
        } else {
            auto weighted = [&](const GuardedExpr& x) {
                return x.weight() == s.one() ? x.inner() : Expr::scalar(x.inner(), x.weight());
            };
            it->second = GuardedExpr::span(g.head(), Expr::sum(weighted(old), weighted(g)), g.tail(), s.one());
        }
    }
    GuardedSum out;
    for (auto& [key, g] : merged)
        if (g.weight() != s.zero()) out.summands.push_back(g);
    return out;
}

GuardedSum Normalizer::one() const {
    std::vector<GuardedExpr> v;
    for (const Atom& g : atoms_) v.push_back(GuardedExpr::atom(g, semiring_->one()));
    return canonicalize(v);
}

GuardedSum Normalizer::zero() const { return {}; }

GuardedSum Normalizer::add(const GuardedSum& u, const GuardedSum& v) const {
    std::vector<GuardedExpr> all = u.summands;
    all.insert(all.end(), v.summands.begin(), v.summands.end());
    return canonicalize(all);
}

GuardedSum Normalizer::mul(const GuardedSum& u, const GuardedSum& v) const {
    std::vector<GuardedExpr> all;
    for (const auto& e : u.summands)
        for (const auto& f : v.summands) all.push_back(bullet(e, f));
    return canonicalize(all);
}

GuardedSum Normalizer::scalar(const GuardedSum& u, Elem t) const {
    const Semiring& s = *semiring_;
    std::vector<GuardedExpr> all;
    for (const auto& e : u.summands) {
        switch (e.form()) {
        case GuardedExpr::Form::Zero: break;
        case GuardedExpr::Form::Atom: all.push_back(GuardedExpr::atom(e.head(), s.mul(e.weight(), t))); break;
        case GuardedExpr::Form::Span:
            all.push_back(GuardedExpr::span(e.head(), e.inner(), e.tail(), s.mul(e.weight(), t)));
            break;
        }
    }
    return canonicalize(all);
}

GuardedSum Normalizer::star_single(const GuardedExpr& g) const {
    const Semiring& s = *semiring_;
    if (g.form() != GuardedExpr::Form::Span) return one();
    if (g.head() != g.tail()) return add(one(), canonicalize({g}));
    // G e (G e @ s)* G @ s
    Expr loop = Expr::product(atom_expr(g.head()), g.inner());
    if (g.weight() != s.one()) loop = Expr::scalar(loop, g.weight());
    Expr inner = Expr::product(g.inner(), Expr::star(loop));
    return add(one(), canonicalize({GuardedExpr::span(g.head(), std::move(inner), g.tail(), g.weight())}));
}

GuardedSum Normalizer::star_prefix(const std::vector<GuardedExpr>& g, std::size_t n) const {
    if (n == 0) return one();
    if (n == 1) return star_single(g[0]);
    const GuardedSum e_star = star_prefix(g, n - 1);
    const GuardedExpr& last = g[n - 1];
    const GuardedSum last_sum = canonicalize({last});
    if (last_sum.summands.empty()) return e_star;

    // f = head(g) body(g) e^* head(g) @ weight(g), with the body fused
    // against e^* summand by summand so that no two atoms end up adjacent.
    const GuardedSum closing = canonicalize({GuardedExpr::atom(last.head(), semiring_->one())});
    const GuardedSum f = mul(mul(last_sum, e_star), closing);
    // Every summand of f starts and ends at head(g). Atom forms G@{c} have
    // (G@{c})* = 1 because c <= 1, so only the loop span contributes.
    GuardedSum f_star = one();
    for (const auto& x : f.summands)
        if (x.form() == GuardedExpr::Form::Span) f_star = star_single(x);

    return add(e_star, mul(mul(mul(e_star, f_star), last_sum), e_star));
}

GuardedSum Normalizer::star(const GuardedSum& u) const {
    const GuardedSum c = canonicalize(u.summands);
    return star_prefix(c.summands, c.summands.size());
}

GuardedSum Normalizer::hat_test(const TestExpr& b) const {
    using K = TestExpr::Kind;
    const Semiring& s = *semiring_;
    switch (b.kind()) {
    case K::Zero: return zero();
    case K::One: return one();
    case K::Letter:
    case K::Not: {
        if (b.kind() == K::Not && b.operand().kind() != K::Letter) return hat_test(to_bnf(b));
        std::vector<GuardedExpr> v;
        for (const Atom& g : atoms_)
            if (atom_satisfies(g, b)) v.push_back(GuardedExpr::atom(g, s.one()));
        return canonicalize(v);
    }
    case K::Or: return add(hat_test(b.left()), hat_test(b.right()));
    case K::And: return mul(hat_test(b.left()), hat_test(b.right()));
    }
    throw StructuralError("unknown test node");
}

GuardedSum Normalizer::hat(const Expr& e) const {
    std::unordered_map<const void*, GuardedSum> memo;
    std::function<GuardedSum(const Expr&)> go = [&](const Expr& x) -> GuardedSum {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        GuardedSum r;
        switch (x.kind()) {
        case Expr::Kind::Action: {
            if (x.symbol() >= alphabets_.actions().size()) throw StructuralError("action index out of range");
            std::vector<GuardedExpr> v;
            for (const Atom& g : atoms_)
                for (const Atom& h : atoms_) v.push_back(GuardedExpr::span(g, x, h, semiring_->one()));
            r = canonicalize(v);
            break;
        }
        case Expr::Kind::Test: r = hat_test(x.test_expr()); break;
        case Expr::Kind::Scalar: r = scalar(go(x.operand()), x.weight()); break;
        case Expr::Kind::Sum: r = add(go(x.left()), go(x.right())); break;
        case Expr::Kind::Product: r = mul(go(x.left()), go(x.right())); break;
        case Expr::Kind::Star: r = star(go(x.operand())); break;
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return go(to_bnf(e));
}

Expr Normalizer::to_expr(const GuardedSum& u) const {
    std::optional<Expr> out;
    for (const auto& g : u.summands) {
        Expr x = g.to_expr(*semiring_);
        out = out ? Expr::sum(*out, x) : x;
    }
    return out ? *out : Expr::zero();
}

std::string Normalizer::print(const GuardedSum& u, std::size_t max_nodes) const {
    const Expr e = to_expr(u);
    if (tree_size(e, max_nodes + 1) > max_nodes)
        throw ResourceError("normal form too large to print (more than " + std::to_string(max_nodes) +
                            " nodes); shrink the alphabets");
    return wkat::print(e, alphabets_, *semiring_);
}

GuardedSum hat(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring) {
    return Normalizer(alphabets, semiring).hat(e);
}

Expr normalize(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring) {
    Normalizer n(alphabets, semiring);
    return n.to_expr(n.hat(e));
}

std::size_t tree_size(const Expr& e, std::size_t cap) {
    std::unordered_map<const void*, std::size_t> memo;
    std::function<std::size_t(const Expr&)> go = [&](const Expr& x) -> std::size_t {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        std::size_t n = 1;
        switch (x.kind()) {
        case Expr::Kind::Action:
        case Expr::Kind::Test: break;
        case Expr::Kind::Scalar:
        case Expr::Kind::Star: n += go(x.operand()); break;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: n += go(x.left()) + go(x.right()); break;
        }
        n = std::min(n, cap);
        memo.emplace(x.id(), n);
        return n;
    };
    return go(e);
}

} // namespace wkat
