#pragma once

// Brute-force reference semantics used as test oracles. Nothing here calls the
// series, matrix or normal-form code under test.

#include "wkat/relational.hpp"
#include "wkat/semiring.hpp"
#include "wkat/syntax.hpp"

#include <unordered_map>
#include <vector>

namespace oracle {

using wkat::Alphabets;
using wkat::Atom;
using wkat::Elem;
using wkat::Expr;
using wkat::Semiring;
using wkat::TestExpr;

// Least solution of x = 1 + a x by plain iteration.
inline Elem star(const Semiring& s, Elem a) {
    Elem x = s.zero();
    for (;;) {
        const Elem next = s.add(s.one(), s.mul(a, x));
        if (next == x) return x;
        x = next;
    }
}

inline bool holds(const TestExpr& b, const Atom& g) {
    using K = TestExpr::Kind;
    switch (b.kind()) {
    case K::Letter: return g.holds(b.symbol());
    case K::Not: return !holds(b.operand(), g);
    case K::Or: return holds(b.left(), g) || holds(b.right(), g);
    case K::And: return holds(b.left(), g) && holds(b.right(), g);
    case K::Zero: return false;
    case K::One: return true;
    }
    return false;
}

// Negation pushed to the letters.
inline TestExpr nnf(const TestExpr& b, bool neg = false) {
    using K = TestExpr::Kind;
    switch (b.kind()) {
    case K::Letter: return neg ? TestExpr::negate(b) : b;
    case K::Not: return nnf(b.operand(), !neg);
    case K::Or: {
        TestExpr l = nnf(b.left(), neg), r = nnf(b.right(), neg);
        return neg ? TestExpr::conj(l, r) : TestExpr::disj(l, r);
    }
    case K::And: {
        TestExpr l = nnf(b.left(), neg), r = nnf(b.right(), neg);
        return neg ? TestExpr::disj(l, r) : TestExpr::conj(l, r);
    }
    case K::Zero: return neg ? TestExpr::one() : TestExpr::zero();
    case K::One: return neg ? TestExpr::zero() : TestExpr::one();
    }
    return b;
}

// Commutative, partially ordered (monotone), zero-bounded and integral,
// checked by brute force over the raw tables.
inline bool is_copi(std::size_t n, const std::vector<Elem>& add, const std::vector<Elem>& mul, Elem zero, Elem one,
                    const std::vector<bool>& leq) {
    const auto A = [&](std::size_t x, std::size_t y) { return add[x * n + y]; };
    const auto M = [&](std::size_t x, std::size_t y) { return mul[x * n + y]; };
    const auto L = [&](std::size_t x, std::size_t y) { return static_cast<bool>(leq[x * n + y]); };
    for (std::size_t x = 0; x < n; ++x) {
        if (A(x, zero) != x || A(zero, x) != x || M(x, one) != x || M(one, x) != x) return false;
        if (M(x, zero) != zero || M(zero, x) != zero) return false;
        if (!L(x, x) || !L(zero, x) || !L(x, one)) return false;
        for (std::size_t y = 0; y < n; ++y) {
            if (A(x, y) != A(y, x) || M(x, y) != M(y, x)) return false;
            if (x != y && L(x, y) && L(y, x)) return false;
            for (std::size_t z = 0; z < n; ++z) {
                if (A(A(x, y), z) != A(x, A(y, z)) || M(M(x, y), z) != M(x, M(y, z))) return false;
                if (M(x, A(y, z)) != A(M(x, y), M(x, z)) || M(A(x, y), z) != A(M(x, z), M(y, z))) return false;
                if (L(x, y) && L(y, z) && !L(x, z)) return false;
                if (L(x, y) && (!L(A(x, z), A(y, z)) || !L(M(x, z), M(y, z)))) return false;
            }
        }
    }
    return true;
}

// Coefficient of one guarded string, given as atoms and actions, by
// recursion over all fusion splittings.
class Guarded {
public:
    Guarded(const Semiring& s, std::vector<Atom> atoms, std::vector<wkat::Symbol> acts)
        : s_(s), atoms_(std::move(atoms)), acts_(std::move(acts)) {}

    Elem coef(const Expr& e) { return at(e, 0, atoms_.size() - 1); }

private:
    Elem at(const Expr& e, std::size_t i, std::size_t j) {
        const std::size_t n = atoms_.size();
        auto& slots = memo_[e.id()];
        if (slots.empty()) slots.assign(n * n, -1);
        if (slots[i * n + j] >= 0) return static_cast<Elem>(slots[i * n + j]);
        Elem r = s_.zero();
        switch (e.kind()) {
        case Expr::Kind::Action:
            if (j == i + 1 && acts_[i] == e.symbol()) r = s_.one();
            break;
        case Expr::Kind::Test:
            if (i == j && holds(e.test_expr(), atoms_[i])) r = s_.one();
            break;
        case Expr::Kind::Scalar: r = s_.mul(at(e.operand(), i, j), e.weight()); break;
        case Expr::Kind::Sum: r = s_.add(at(e.left(), i, j), at(e.right(), i, j)); break;
        case Expr::Kind::Product:
            for (std::size_t k = i; k <= j; ++k) r = s_.add(r, s_.mul(at(e.left(), i, k), at(e.right(), k, j)));
            break;
        case Expr::Kind::Star: {
            Elem rest = i == j ? s_.one() : s_.zero();
            for (std::size_t k = i + 1; k <= j; ++k) rest = s_.add(rest, s_.mul(at(e.operand(), i, k), at(e, k, j)));
            r = s_.mul(star(s_, at(e.operand(), i, i)), rest);
            break;
        }
        }
        memo_[e.id()][i * n + j] = r;
        return r;
    }

    const Semiring& s_;
    std::vector<Atom> atoms_;
    std::vector<wkat::Symbol> acts_;
    std::unordered_map<const void*, std::vector<int>> memo_;
};

// Coefficient of a word over Sigma u Lambda (actions first, then p_i at
// |Sigma| + 2i and ~p_i at |Sigma| + 2i + 1), literals read as letters.
class Free {
public:
    Free(const Semiring& s, std::size_t actions, std::vector<std::uint16_t> word)
        : s_(s), actions_(actions), w_(std::move(word)) {}

    Elem coef(const Expr& e) { return at(e, 0, w_.size()); }

private:
    Elem test(const TestExpr& b, std::size_t i, std::size_t j) {
        using K = TestExpr::Kind;
        switch (b.kind()) {
        case K::Zero: return s_.zero();
        case K::One: return i == j ? s_.one() : s_.zero();
        case K::Letter: return j == i + 1 && w_[i] == actions_ + 2 * b.symbol() ? s_.one() : s_.zero();
        case K::Not:
            // nnf leaves negation on letters only
            return j == i + 1 && w_[i] == actions_ + 2 * b.operand().symbol() + 1 ? s_.one() : s_.zero();
        case K::Or: return s_.add(test(b.left(), i, j), test(b.right(), i, j));
        case K::And: {
            Elem r = s_.zero();
            for (std::size_t k = i; k <= j; ++k) r = s_.add(r, s_.mul(test(b.left(), i, k), test(b.right(), k, j)));
            return r;
        }
        }
        return s_.zero();
    }

    Elem at(const Expr& e, std::size_t i, std::size_t j) {
        const std::size_t n = w_.size() + 1;
        auto& slots = memo_[e.id()];
        if (slots.empty()) slots.assign(n * n, -1);
        if (slots[i * n + j] >= 0) return static_cast<Elem>(slots[i * n + j]);
        Elem r = s_.zero();
        switch (e.kind()) {
        case Expr::Kind::Action:
            if (j == i + 1 && w_[i] == e.symbol()) r = s_.one();
            break;
        case Expr::Kind::Test: {
            auto it = nnf_.find(e.id());
            if (it == nnf_.end()) it = nnf_.emplace(e.id(), nnf(e.test_expr())).first;
            r = test(it->second, i, j);
            break;
        }
        case Expr::Kind::Scalar: r = s_.mul(at(e.operand(), i, j), e.weight()); break;
        case Expr::Kind::Sum: r = s_.add(at(e.left(), i, j), at(e.right(), i, j)); break;
        case Expr::Kind::Product:
            for (std::size_t k = i; k <= j; ++k) r = s_.add(r, s_.mul(at(e.left(), i, k), at(e.right(), k, j)));
            break;
        case Expr::Kind::Star: {
            Elem rest = i == j ? s_.one() : s_.zero();
            for (std::size_t k = i + 1; k <= j; ++k) rest = s_.add(rest, s_.mul(at(e.operand(), i, k), at(e, k, j)));
            r = s_.mul(star(s_, at(e.operand(), i, i)), rest);
            break;
        }
        }
        memo_[e.id()][i * n + j] = r;
        return r;
    }

    const Semiring& s_;
    std::size_t actions_;
    std::vector<std::uint16_t> w_;
    std::unordered_map<const void*, std::vector<int>> memo_;
    std::unordered_map<const void*, TestExpr> nnf_;
};

// All guarded strings with 1..max_atoms atoms as (atoms, actions).
inline std::vector<std::pair<std::vector<Atom>, std::vector<wkat::Symbol>>>
guarded_strings(const Alphabets& al, std::size_t max_atoms) {
    const unsigned width = static_cast<unsigned>(al.tests().size());
    std::vector<Atom> atoms;
    for (std::uint32_t c = 0; c < (1U << width); ++c) atoms.emplace_back(c, width);
    std::vector<std::pair<std::vector<Atom>, std::vector<wkat::Symbol>>> out, layer;
    for (const Atom& g : atoms) layer.push_back({{g}, {}});
    for (std::size_t len = 1; len <= max_atoms; ++len) {
        out.insert(out.end(), layer.begin(), layer.end());
        if (len == max_atoms) break;
        std::vector<std::pair<std::vector<Atom>, std::vector<wkat::Symbol>>> next;
        for (const auto& [gs, as] : layer)
            for (wkat::Symbol a = 0; a < al.actions().size(); ++a)
                for (const Atom& g : atoms) {
                    auto g2 = gs;
                    auto a2 = as;
                    g2.push_back(g);
                    a2.push_back(a);
                    next.push_back({g2, a2});
                }
        layer = std::move(next);
    }
    return out;
}

// Library encoding of a guarded string: atom codes and action indices interleaved.
inline wkat::Word encode(const std::vector<Atom>& atoms, const std::vector<wkat::Symbol>& acts) {
    wkat::Word w;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) w.push_back(acts[i - 1]);
        w.push_back(static_cast<std::uint16_t>(atoms[i].code()));
    }
    return w;
}

// (M N)_{q,q'} = sum_p M_{q,p} N_{p,q'} over every p, zero entries included.
inline wkat::Matrix dense_mul(const wkat::Matrix& m, const wkat::Matrix& n) {
    const Semiring& s = *m.semiring();
    wkat::Matrix out(m.size(), m.semiring());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            Elem acc = s.zero();
            for (std::size_t k = 0; k < m.size(); ++k) acc = s.add(acc, s.mul(m.at(i, k), n.at(k, j)));
            out.set(i, j, acc);
        }
    return out;
}

// Sum over all paths q -> q' of at most `max_len` edges of the product of
// their weights (the empty path contributes one on the diagonal).
inline Elem path_sum(const wkat::Matrix& m, std::size_t q, std::size_t target, std::size_t max_len) {
    const Semiring& s = *m.semiring();
    Elem total = s.zero();
    std::vector<std::pair<std::size_t, Elem>> frontier{{q, s.one()}};
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::vector<std::pair<std::size_t, Elem>> next;
        for (const auto& [state, w] : frontier) {
            if (state == target) total = s.add(total, w);
            if (len == max_len) continue;
            for (std::size_t r = 0; r < m.size(); ++r) {
                const Elem x = m.at(state, r);
                if (x != s.zero()) next.emplace_back(r, s.mul(w, x));
            }
        }
        frontier = std::move(next);
    }
    return total;
}

} // namespace oracle
