#include "wkat/relational.hpp"

#include "wkat/error.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace wkat {

namespace {

void same_shape(const Matrix& m, const Matrix& n) {
    if (m.size() != n.size()) throw MismatchError("matrix dimensions differ");
    if (!(*m.semiring() == *n.semiring())) throw MismatchError("matrices over different semirings");
}

} // namespace

Matrix::Matrix(std::size_t n, SemiringRef semiring) : semiring_(std::move(semiring)), rows_(n) {
    if (!semiring_) throw MismatchError("matrix without a semiring");
}

Matrix Matrix::identity(std::size_t n, SemiringRef semiring) {
    const Elem one = semiring->one();
    return scalar(n, std::move(semiring), one);
}

Matrix Matrix::diagonal(const std::vector<bool>& on, SemiringRef semiring) {
    Matrix m(on.size(), std::move(semiring));
    for (std::size_t i = 0; i < on.size(); ++i)
        if (on[i]) m.rows_[i].emplace_back(static_cast<std::uint32_t>(i), m.semiring_->one());
    return m;
}

Matrix Matrix::scalar(std::size_t n, SemiringRef semiring, Elem s) {
    Matrix m(n, std::move(semiring));
    if (s == m.semiring_->zero()) return m;
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(static_cast<std::uint32_t>(i), s);
    return m;
}

Elem Matrix::at(std::size_t i, std::size_t j) const {
    const Row& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& x, std::size_t c) { return x.first < c; });
    return it != r.end() && it->first == j ? it->second : semiring_->zero();
}

void Matrix::set(std::size_t i, std::size_t j, Elem s) {
    if (j >= rows_.size()) throw StructuralError("matrix column out of range");
    Row& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& x, std::size_t c) { return x.first < c; });
    const bool present = it != r.end() && it->first == j;
    if (s == semiring_->zero()) {
        if (present) r.erase(it);
    } else if (present) {
        it->second = s;
    } else {
        r.insert(it, {static_cast<std::uint32_t>(j), s});
    }
}

std::size_t Matrix::nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.size() == b.size() && *a.semiring_ == *b.semiring_ && a.rows_ == b.rows_;
}

Matrix mat_add(const Matrix& m, const Matrix& n) {
    same_shape(m, n);
    const Semiring& s = *m.semiring();
    Matrix out(m.size(), m.semiring());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& a = m.row(i);
        const auto& b = n.row(i);
        std::size_t x = 0, y = 0;
        while (x < a.size() || y < b.size()) {
            if (y == b.size() || (x < a.size() && a[x].first < b[y].first)) {
                out.set(i, a[x].first, a[x].second);
                ++x;
            } else if (x == a.size() || b[y].first < a[x].first) {
                out.set(i, b[y].first, b[y].second);
                ++y;
            } else {
                out.set(i, a[x].first, s.add(a[x].second, b[y].second));
                ++x;
                ++y;
            }
        }
    }
    return out;
}

Matrix mat_mul(const Matrix& m, const Matrix& n) {
    same_shape(m, n);
    const Semiring& s = *m.semiring();
    const std::size_t size = m.size();
    Matrix out(size, m.semiring());
    std::vector<Elem> acc(size, s.zero());
    std::vector<std::uint32_t> touched;
    for (std::size_t i = 0; i < size; ++i) {
        touched.clear();
        for (const auto& [k, x] : m.row(i)) {
            for (const auto& [j, y] : n.row(k)) {
                const Elem p = s.mul(x, y);
                if (acc[j] == s.zero()) {
                    if (p == s.zero()) continue;
                    touched.push_back(j);
                    acc[j] = p;
                } else {
                    acc[j] = s.add(acc[j], p);
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::uint32_t j : touched) {
            out.set(i, j, acc[j]);
            acc[j] = s.zero();
        }
    }
    return out;
}

Matrix mat_scalar(const Matrix& m, Elem t) {
    const Semiring& s = *m.semiring();
    Matrix out(m.size(), m.semiring());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, x] : m.row(i)) out.set(i, j, s.mul(x, t));
    return out;
}

Matrix mat_complement(const Matrix& d) {
    const Semiring& s = *d.semiring();
    std::vector<bool> on(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (const auto& [j, x] : d.row(i)) {
            if (j != i) throw StructuralError("complement of a non-diagonal matrix");
            if (x != s.one()) throw StructuralError("complement of a matrix with entries other than 0 and 1");
        }
        on[i] = d.row(i).empty();
    }
    return Matrix::diagonal(on, d.semiring());
}

Matrix mat_star(const Matrix& m) {
    const std::size_t n = m.size();
    const Matrix id = Matrix::identity(n, m.semiring());
    const std::size_t ceiling = (n + 1) * m.semiring()->size() * m.semiring()->size() + 2;
    Matrix x(n, m.semiring());
    for (std::size_t step = 0; step <= ceiling; ++step) {
        Matrix next = mat_add(id, mat_mul(m, x));
        if (next == x) return x;
        x = std::move(next);
    }
    throw InvariantViolation("matrix star did not stabilise");
}

bool mat_leq(const Matrix& m, const Matrix& n) {
    same_shape(m, n);
    const Semiring& s = *m.semiring();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (const auto& [j, x] : m.row(i))
            if (!s.leq(x, n.at(i, j))) return false;
        // entries absent from m are zero, which is least
    }
    return true;
}

// ------------------------------------------------------- TransitionSystem

TransitionSystem::TransitionSystem(Alphabets alphabets, SemiringRef semiring, std::vector<std::string> states)
    : alphabets_(std::move(alphabets)), semiring_(std::move(semiring)), states_(std::move(states)) {
    if (!semiring_) throw MismatchError("transition system without a semiring");
    if (states_.empty()) throw StructuralError("a transition system needs at least one state");
    std::vector<std::string> sorted = states_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw StructuralError("duplicate state name");
    rel_.assign(alphabets_.actions().size(), Matrix(states_.size(), semiring_));
    sat_.assign(alphabets_.tests().size(), std::vector<bool>(states_.size(), false));
}

std::size_t TransitionSystem::state(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) throw StructuralError("unknown state '" + name + "'");
    return static_cast<std::size_t>(it - states_.begin());
}

TransitionSystem parse_transition_system(std::istream& in, const Alphabets& alphabets, const SemiringRef& fallback) {
    SemiringRef semiring = fallback;
    std::optional<TransitionSystem> ts;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw StructuralError("transition system line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::vector<std::string> args;
        for (std::string w; ls >> w;) args.push_back(w);
        if (kw == "semiring") {
            if (ts) fail("'semiring' must precede 'states'");
            if (args.size() != 1) fail("expected: semiring NAME");
            semiring = semirings::resolve(args[0]);
        } else if (kw == "states") {
            if (ts) fail("duplicate 'states' line");
            if (args.empty()) fail("no states listed");
            if (!semiring) fail("no semiring given");
            ts.emplace(alphabets, semiring, args);
        } else if (kw == "rel") {
            if (!ts) fail("'rel' before 'states'");
            if (args.size() != 4) fail("expected: rel ACTION STATE STATE WEIGHT");
            auto a = alphabets.action(args[0]);
            if (!a) fail("unknown action '" + args[0] + "'");
            const std::size_t q = ts->state(args[1]);
            const std::size_t r = ts->state(args[2]);
            auto w = semiring->find(args[3]);
            if (!w) fail("unknown weight '" + args[3] + "' in " + semiring->name());
            ts->rel(*a).set(q, r, *w);
        } else if (kw == "sat") {
            if (!ts) fail("'sat' before 'states'");
            if (args.empty()) fail("expected: sat TEST STATE ...");
            auto p = alphabets.test(args[0]);
            if (!p) fail("unknown test '" + args[0] + "'");
            for (std::size_t i = 1; i < args.size(); ++i) ts->sat(*p)[ts->state(args[i])] = true;
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (!ts) throw StructuralError("transition system has no 'states' line");
    return *ts;
}

TransitionSystem parse_transition_system_string(const std::string& text, const Alphabets& alphabets,
                                                const SemiringRef& fallback) {
    std::istringstream in(text);
    return parse_transition_system(in, alphabets, fallback);
}

TransitionSystem load_transition_system(const std::string& path, const Alphabets& alphabets,
                                        const SemiringRef& fallback) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open transition system file '" + path + "'");
    return parse_transition_system(in, alphabets, fallback);
}

std::string format_transition_system(const TransitionSystem& ts) {
    const Semiring& s = *ts.semiring();
    std::ostringstream out;
    out << "semiring " << s.name() << "\nstates";
    for (const auto& q : ts.states()) out << ' ' << q;
    out << '\n';
    const auto& al = ts.alphabets();
    for (Symbol a = 0; a < al.actions().size(); ++a)
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (const auto& [j, x] : ts.rel(a).row(i))
                out << "rel " << al.actions()[a] << ' ' << ts.states()[i] << ' ' << ts.states()[j] << ' '
                    << s.token(x) << '\n';
    for (Symbol p = 0; p < al.tests().size(); ++p) {
        out << "sat " << al.tests()[p];
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (ts.sat(p)[i]) out << ' ' << ts.states()[i];
        out << '\n';
    }
    return out.str();
}

Matrix eval_test(const TransitionSystem& ts, const TestExpr& b) {
    using K = TestExpr::Kind;
    switch (b.kind()) {
    case K::Zero: return Matrix(ts.size(), ts.semiring());
    case K::One: return Matrix::identity(ts.size(), ts.semiring());
    case K::Letter:
        if (b.symbol() >= ts.alphabets().tests().size()) throw MismatchError("test letter outside the system");
        return Matrix::diagonal(ts.sat(b.symbol()), ts.semiring());
    case K::Not: return mat_complement(eval_test(ts, b.operand()));
    case K::Or: return mat_add(eval_test(ts, b.left()), eval_test(ts, b.right()));
    case K::And: return mat_mul(eval_test(ts, b.left()), eval_test(ts, b.right()));
    }
    throw StructuralError("unknown test node");
}

Matrix eval_M(const TransitionSystem& ts, const Expr& e) {
    std::unordered_map<const void*, Matrix> memo;
    std::function<Matrix(const Expr&)> go = [&](const Expr& x) -> Matrix {
        if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
        Matrix r(ts.size(), ts.semiring());
        switch (x.kind()) {
        case Expr::Kind::Action:
            if (x.symbol() >= ts.alphabets().actions().size()) throw MismatchError("action outside the system");
            r = ts.rel(x.symbol());
            break;
        case Expr::Kind::Test: r = eval_test(ts, x.test_expr()); break;
        case Expr::Kind::Scalar: r = mat_scalar(go(x.operand()), x.weight()); break;
        case Expr::Kind::Sum: r = mat_add(go(x.left()), go(x.right())); break;
        case Expr::Kind::Product: r = mat_mul(go(x.left()), go(x.right())); break;
        case Expr::Kind::Star: r = mat_star(go(x.operand())); break;
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return go(e);
}

std::string format_matrix(const Matrix& m, const std::vector<std::string>& states) {
    const Semiring& s = *m.semiring();
    std::ostringstream out;
    out << "matrix over " << s.name() << " (" << m.size() << " states, " << m.nonzeros() << " nonzero)\n";
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, x] : m.row(i)) out << states.at(i) << " -> " << states.at(j) << " : " << s.token(x) << '\n';
    return out.str();
}

// ------------------------------------------------------------------ Cayley

std::vector<Word> cayley_states(const Alphabets& alphabets, std::size_t bound) {
    return enumerate_words(CarrierSpec::guarded(alphabets, bound));
}

namespace {

Matrix cayley_matrix(const TruncatedSeries& r, const std::vector<Word>& states,
                     const std::unordered_map<Word, std::uint32_t, WordHash>& index) {
    Matrix m(states.size(), r.semiring());
    for (std::size_t vi = 0; vi < states.size(); ++vi) {
        const Word& v = states[vi];
        // w ranges over the fusion prefixes of v; u is the matching suffix.
        for (std::size_t end = 1; end <= v.size(); end += 2) {
            const Word u(v.begin() + static_cast<std::ptrdiff_t>(end) - 1, v.end());
            const Elem x = r.at(u);
            if (x == r.semiring()->zero()) continue;
            const Word w(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(end));
            m.set(index.at(w), vi, x);
        }
    }
    return m;
}

std::unordered_map<Word, std::uint32_t, WordHash> index_states(const std::vector<Word>& states) {
    std::unordered_map<Word, std::uint32_t, WordHash> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<std::uint32_t>(i));
    return index;
}

} // namespace

Matrix cayley_of_series(const TruncatedSeries& r, std::size_t bound) {
    if (r.spec().kind != Carrier::Guarded) throw MismatchError("the Cayley matrix needs a guarded series");
    if (r.spec().bound < bound) throw MismatchError("series bound is below the Cayley bound");
    CarrierSpec spec = r.spec();
    spec.bound = bound;
    const auto states = enumerate_words(spec);
    return cayley_matrix(r, states, index_states(states));
}

TransitionSystem cayley_system(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t bound) {
    const auto words = cayley_states(alphabets, bound);
    const auto index = index_states(words);
    const CarrierSpec spec = CarrierSpec::guarded(alphabets, bound);
    std::vector<std::string> names;
    names.reserve(words.size());
    for (const Word& w : words) names.push_back(print(GuardedString(w, spec.atom_width), alphabets));
    TransitionSystem ts(alphabets, semiring, names);
    for (Symbol a = 0; a < alphabets.actions().size(); ++a)
        ts.rel(a) = cayley_matrix(interp_guarded(Expr::action(a), alphabets, semiring, bound), words, index);
    for (Symbol p = 0; p < alphabets.tests().size(); ++p) {
        const Matrix c =
            cayley_matrix(interp_guarded(Expr::test(TestExpr::letter(p)), alphabets, semiring, bound), words, index);
        for (std::size_t i = 0; i < words.size(); ++i) ts.sat(p)[i] = c.at(i, i) == semiring->one();
    }
    return ts;
}

AgreementReport check_cayley(const Expr& e, const TransitionSystem& cayley, std::size_t bound) {
    const Alphabets& al = cayley.alphabets();
    const Semiring& s = *cayley.semiring();
    const auto words = cayley_states(al, bound);
    if (words.size() != cayley.size()) throw MismatchError("Cayley system was built for a different bound");
    const Matrix lhs = cayley_matrix(interp_guarded(e, al, cayley.semiring(), bound), words, index_states(words));
    const Matrix rhs = eval_M(cayley, e);
    AgreementReport rep;
    rep.states = words.size();
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::vector<std::uint32_t> cols;
        for (const auto& [j, x] : lhs.row(i)) cols.push_back(j);
        for (const auto& [j, x] : rhs.row(i)) cols.push_back(j);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        for (std::uint32_t j : cols) {
            ++rep.entries_compared;
            const Elem x = lhs.at(i, j), y = rhs.at(i, j);
            if (x == y) continue;
            ++rep.mismatch_count;
            if (rep.mismatches.size() < 8)
                rep.mismatches.push_back({cayley.states()[i], cayley.states()[j], s.token(x), s.token(y)});
        }
    }
    return rep;
}

AgreementReport check_cayley(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring,
                             std::size_t bound) {
    return check_cayley(e, cayley_system(alphabets, semiring, bound), bound);
}

} // namespace wkat
