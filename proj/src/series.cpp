#include "wkat/series.hpp"

#include "wkat/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace wkat {

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : w) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return h ^ w.size();
}

// ---------------------------------------------------------- guarded strings

GuardedString::GuardedString(Atom atom) : word_{static_cast<std::uint16_t>(atom.code())}, width_(atom.width()) {}

GuardedString::GuardedString(const std::vector<Atom>& atoms, const std::vector<Symbol>& letters) {
    if (atoms.empty()) throw StructuralError("a guarded string needs at least one atom");
    if (atoms.size() != letters.size() + 1) throw StructuralError("a guarded string alternates atoms and actions");
    width_ = atoms.front().width();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].width() != width_) throw MismatchError("atoms of different widths in one guarded string");
        word_.push_back(static_cast<std::uint16_t>(atoms[i].code()));
        if (i < letters.size()) word_.push_back(letters[i]);
    }
}

GuardedString::GuardedString(Word word, unsigned atom_width) : word_(std::move(word)), width_(atom_width) {
    if (word_.empty() || word_.size() % 2 == 0) throw StructuralError("malformed guarded string encoding");
    for (std::size_t i = 0; i < word_.size(); i += 2)
        if (word_[i] >= (1U << width_)) throw StructuralError("atom code out of range in guarded string");
}

std::optional<GuardedString> fusion(const GuardedString& a, const GuardedString& b) {
    if (a.atom_width() != b.atom_width()) throw MismatchError("fusion of guarded strings over different test alphabets");
    if (a.tail() != b.head()) return std::nullopt;
    Word w = a.word();
    w.insert(w.end(), b.word().begin() + 1, b.word().end());
    return GuardedString(std::move(w), a.atom_width());
}

std::string print(const GuardedString& w, const Alphabets& alphabets) {
    std::string out;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (i) {
            out += ' ';
            out += alphabets.actions().at(w.letter(i - 1));
            out += ' ';
        }
        out += print(w.atom(i), alphabets);
    }
    return out;
}

// ----------------------------------------------------------------- carriers

CarrierSpec CarrierSpec::guarded(const Alphabets& alphabets, std::size_t bound) {
    (void)atom_count(alphabets);
    return {Carrier::Guarded, static_cast<unsigned>(alphabets.tests().size()), alphabets.actions().size(), bound};
}

CarrierSpec CarrierSpec::free_over_literals(const Alphabets& alphabets, std::size_t bound) {
    return {Carrier::Free, 0, alphabets.actions().size() + 2 * alphabets.tests().size(), bound};
}

std::uint16_t free_letter_action(const Alphabets& alphabets, Symbol a) {
    if (a >= alphabets.actions().size()) throw StructuralError("action index out of range");
    return a;
}

std::uint16_t free_letter_literal(const Alphabets& alphabets, Symbol p, bool positive) {
    if (p >= alphabets.tests().size()) throw StructuralError("test index out of range");
    return static_cast<std::uint16_t>(alphabets.actions().size() + 2 * p + (positive ? 0 : 1));
}

std::string free_letter_name(const Alphabets& alphabets, std::uint16_t letter) {
    const std::size_t na = alphabets.actions().size();
    if (letter < na) return alphabets.actions()[letter];
    const std::size_t k = letter - na;
    if (k / 2 >= alphabets.tests().size()) throw StructuralError("free letter out of range");
    return (k % 2 ? "~" : "") + alphabets.tests()[k / 2];
}

Word spell(const GuardedString& w, const Alphabets& alphabets) {
    Word out;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (i) out.push_back(free_letter_action(alphabets, w.letter(i - 1)));
        const Atom g = w.atom(i);
        for (Symbol p = 0; p < g.width(); ++p) out.push_back(free_letter_literal(alphabets, p, g.holds(p)));
    }
    return out;
}

std::vector<std::pair<Word, Word>> factorizations(const Word& w, Carrier kind) {
    std::vector<std::pair<Word, Word>> out;
    if (kind == Carrier::Guarded) {
        // Split at each atom, which then ends the prefix and starts the suffix.
        for (std::size_t i = 0; i < w.size(); i += 2)
            out.emplace_back(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1),
                             Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end()));
    } else {
        for (std::size_t i = 0; i <= w.size(); ++i)
            out.emplace_back(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)),
                             Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end()));
    }
    return out;
}

std::size_t count_words(const CarrierSpec& spec) {
    const double cap = static_cast<double>(max_carrier_words);
    double total = 0;
    if (spec.kind == Carrier::Guarded) {
        const double a = static_cast<double>(spec.atoms());
        double layer = a;
        for (std::size_t k = 1; k <= spec.bound; ++k) {
            total += layer;
            if (total > cap) break;
            layer *= a * static_cast<double>(spec.letters);
        }
    } else {
        double layer = 1;
        for (std::size_t k = 0; k <= spec.bound; ++k) {
            total += layer;
            if (total > cap) break;
            layer *= static_cast<double>(spec.letters);
        }
    }
    if (total > cap)
        throw ResourceError("carrier has more than " + std::to_string(max_carrier_words) +
                            " words within the bound; lower the bound or shrink the alphabets");
    return static_cast<std::size_t>(total);
}

std::vector<Word> enumerate_words(const CarrierSpec& spec) {
    std::vector<Word> out;
    out.reserve(count_words(spec));
    std::vector<Word> layer;
    if (spec.kind == Carrier::Guarded) {
        if (spec.bound == 0) return out;
        for (std::size_t g = 0; g < spec.atoms(); ++g) layer.push_back(Word{static_cast<std::uint16_t>(g)});
        for (std::size_t k = 1;; ++k) {
            out.insert(out.end(), layer.begin(), layer.end());
            if (k == spec.bound) break;
            std::vector<Word> next;
            for (const auto& w : layer)
                for (std::size_t a = 0; a < spec.letters; ++a)
                    for (std::size_t g = 0; g < spec.atoms(); ++g) {
                        Word x = w;
                        x.push_back(static_cast<std::uint16_t>(a));
                        x.push_back(static_cast<std::uint16_t>(g));
                        next.push_back(std::move(x));
                    }
            layer = std::move(next);
        }
    } else {
        layer.emplace_back();
        for (std::size_t k = 0;; ++k) {
            out.insert(out.end(), layer.begin(), layer.end());
            if (k == spec.bound) break;
            std::vector<Word> next;
            for (const auto& w : layer)
                for (std::size_t a = 0; a < spec.letters; ++a) {
                    Word x = w;
                    x.push_back(static_cast<std::uint16_t>(a));
                    next.push_back(std::move(x));
                }
            layer = std::move(next);
        }
    }
    return out;
}

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// ------------------------------------------------------------------- series

TruncatedSeries::TruncatedSeries(CarrierSpec spec, SemiringRef semiring)
    : spec_(spec), semiring_(std::move(semiring)) {
    if (!semiring_) throw MismatchError("series without a semiring");
}

Elem TruncatedSeries::at(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? semiring_->zero() : it->second;
}

void TruncatedSeries::set(const Word& w, Elem s) {
    if (spec_.length(w) > spec_.bound) throw ResourceError("word exceeds the series bound");
    if (spec_.kind == Carrier::Guarded && (w.empty() || w.size() % 2 == 0))
        throw StructuralError("not a guarded string encoding");
    if (s == semiring_->zero()) coeffs_.erase(w);
    else coeffs_[w] = s;
}

std::vector<std::pair<Word, Elem>> TruncatedSeries::sorted() const {
    std::vector<std::pair<Word, Elem>> out(coeffs_.begin(), coeffs_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return word_less(x.first, y.first); });
    return out;
}

TruncatedSeries TruncatedSeries::restrict(std::size_t bound) const {
    CarrierSpec s = spec_;
    s.bound = std::min(bound, spec_.bound);
    TruncatedSeries out(s, semiring_);
    for (const auto& [w, c] : coeffs_)
        if (spec_.length(w) <= s.bound) out.coeffs_.emplace(w, c);
    return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.spec_ == b.spec_ && (a.semiring_ == b.semiring_ || *a.semiring_ == *b.semiring_) && a.coeffs_ == b.coeffs_;
}

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.spec() == b.spec())) throw MismatchError("series over different carriers or bounds");
    if (a.semiring() != b.semiring() && !(*a.semiring() == *b.semiring()))
        throw MismatchError("series over different semirings");
}

} // namespace

TruncatedSeries zero_series(const CarrierSpec& spec, SemiringRef semiring) {
    return TruncatedSeries(spec, std::move(semiring));
}

TruncatedSeries unit_series(const CarrierSpec& spec, SemiringRef semiring) {
    TruncatedSeries r(spec, semiring);
    if (spec.kind == Carrier::Guarded) {
        if (spec.bound >= 1)
            for (std::size_t g = 0; g < spec.atoms(); ++g) r.set(Word{static_cast<std::uint16_t>(g)}, semiring->one());
    } else {
        r.set(Word{}, semiring->one());
    }
    return r;
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    const Semiring& s = *a.semiring();
    TruncatedSeries out = a;
    for (const auto& [w, c] : b.coefficients()) out.set(w, s.add(out.at(w), c));
    return out;
}

TruncatedSeries series_scalar(const TruncatedSeries& r, Elem t) {
    const Semiring& s = *r.semiring();
    if (t >= s.size()) throw StructuralError("scalar outside the semiring");
    TruncatedSeries out(r.spec(), r.semiring());
    for (const auto& [w, c] : r.coefficients()) out.set(w, s.mul(c, t));
    return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    const CarrierSpec& spec = a.spec();
    const Semiring& s = *a.semiring();
    const bool guarded = spec.kind == Carrier::Guarded;
    const std::size_t L = spec.bound;

    // Bucket the right factor by (head symbol, length) so that only pairs
    // whose fusion is defined and within bound are visited.
    const std::size_t heads = guarded ? spec.atoms() : 1;
    std::vector<std::vector<const std::pair<const Word, Elem>*>> buckets(heads * (L + 1));
    for (const auto& entry : b.coefficients()) {
        const std::size_t head = guarded ? entry.first.front() : 0;
        buckets[head * (L + 1) + spec.length(entry.first)].push_back(&entry);
    }

    TruncatedSeries::Map acc;
    for (const auto& [v1, c1] : a.coefficients()) {
        const std::size_t k1 = spec.length(v1);
        const std::size_t head = guarded ? v1.back() : 0;
        const std::size_t max_k2 = guarded ? L + 1 - k1 : L - k1;
        for (std::size_t k2 = 0; k2 <= max_k2; ++k2)
            for (const auto* e2 : buckets[head * (L + 1) + k2]) {
                const Elem p = s.mul(c1, e2->second);
                if (p == s.zero()) continue;
                Word w = v1;
                w.insert(w.end(), e2->first.begin() + (guarded ? 1 : 0), e2->first.end());
                auto [it, fresh] = acc.try_emplace(std::move(w), p);
                if (!fresh) it->second = s.add(it->second, p);
            }
    }
    TruncatedSeries out(spec, a.semiring());
    for (auto& [w, c] : acc)
        if (c != s.zero()) out.set(w, c);
    return out;
}

TruncatedSeries series_star(const TruncatedSeries& r) {
    const TruncatedSeries unit = unit_series(r.spec(), r.semiring());
    TruncatedSeries x = zero_series(r.spec(), r.semiring());
    std::size_t ceiling = std::numeric_limits<std::size_t>::max();
    try {
        ceiling = r.semiring()->size() * count_words(r.spec()) + 2;
    } catch (const ResourceError&) {
    }
    for (std::size_t step = 0; step <= ceiling; ++step) {
        TruncatedSeries next = series_add(unit, series_mul(r, x));
        if (next == x) return x;
        x = std::move(next);
    }
    throw InvariantViolation("series star did not stabilise");
}

bool series_leq(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_compatible(a, b);
    const Semiring& s = *a.semiring();
    for (const auto& [w, c] : a.coefficients())
        if (!s.leq(c, b.at(w))) return false;
    // Words only in b: a is zero there, and zero is least in a copo-semiring,
    // but check the declared order rather than assume it.
    for (const auto& [w, c] : b.coefficients())
        if (!a.coefficients().count(w) && !s.leq(s.zero(), c)) return false;
    return true;
}

// ---------------------------------------------------------- interpretations

namespace {

class GuardedInterp {
public:
    GuardedInterp(const Alphabets& al, SemiringRef s, std::size_t bound)
        : al_(al), s_(std::move(s)), spec_(CarrierSpec::guarded(al, bound)), atoms_(enumerate_atoms(al)) {}

    TruncatedSeries eval(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        TruncatedSeries r = compute(e);
        memo_.emplace(e.id(), r);
        return r;
    }

private:
    TruncatedSeries compute(const Expr& e) {
        switch (e.kind()) {
        case Expr::Kind::Action: {
            if (e.symbol() >= al_.actions().size()) throw StructuralError("action index out of range");
            TruncatedSeries r(spec_, s_);
            if (spec_.bound >= 2)
                for (const Atom& g : atoms_)
                    for (const Atom& h : atoms_)
                        r.set(Word{static_cast<std::uint16_t>(g.code()), e.symbol(), static_cast<std::uint16_t>(h.code())},
                              s_->one());
            return r;
        }
        case Expr::Kind::Test: {
            TruncatedSeries r(spec_, s_);
            if (spec_.bound >= 1)
                for (const Atom& g : atoms_)
                    if (atom_satisfies(g, e.test_expr())) r.set(Word{static_cast<std::uint16_t>(g.code())}, s_->one());
            return r;
        }
        case Expr::Kind::Scalar: return series_scalar(eval(e.operand()), e.weight());
        case Expr::Kind::Sum: return series_add(eval(e.left()), eval(e.right()));
        case Expr::Kind::Product: return series_mul(eval(e.left()), eval(e.right()));
        case Expr::Kind::Star: return series_star(eval(e.operand()));
        }
        throw StructuralError("unknown expression node");
    }

    const Alphabets& al_;
    SemiringRef s_;
    CarrierSpec spec_;
    std::vector<Atom> atoms_;
    std::unordered_map<const void*, TruncatedSeries> memo_;
};

class FreeInterp {
public:
    FreeInterp(const Alphabets& al, SemiringRef s, std::size_t bound)
        : al_(al), s_(std::move(s)), spec_(CarrierSpec::free_over_literals(al, bound)) {}

    TruncatedSeries eval(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        TruncatedSeries r = compute(e);
        memo_.emplace(e.id(), r);
        return r;
    }

private:
    TruncatedSeries letter(std::uint16_t x) const {
        TruncatedSeries r(spec_, s_);
        if (spec_.bound >= 1) r.set(Word{x}, s_->one());
        return r;
    }

    TruncatedSeries test(const TestExpr& b) const {
        using K = TestExpr::Kind;
        switch (b.kind()) {
        case K::Letter: return letter(free_letter_literal(al_, b.symbol(), true));
        case K::Not:
            if (b.operand().kind() != K::Letter) return test(to_bnf(b));
            return letter(free_letter_literal(al_, b.operand().symbol(), false));
        case K::Or: return series_add(test(b.left()), test(b.right()));
        case K::And: return series_mul(test(b.left()), test(b.right()));
        case K::Zero: return zero_series(spec_, s_);
        case K::One: return unit_series(spec_, s_);
        }
        throw StructuralError("unknown test node");
    }

    TruncatedSeries compute(const Expr& e) {
        switch (e.kind()) {
        case Expr::Kind::Action: return letter(free_letter_action(al_, e.symbol()));
        case Expr::Kind::Test: return test(e.test_expr());
        case Expr::Kind::Scalar: return series_scalar(eval(e.operand()), e.weight());
        case Expr::Kind::Sum: return series_add(eval(e.left()), eval(e.right()));
        case Expr::Kind::Product: return series_mul(eval(e.left()), eval(e.right()));
        case Expr::Kind::Star: return series_star(eval(e.operand()));
        }
        throw StructuralError("unknown expression node");
    }

    const Alphabets& al_;
    SemiringRef s_;
    CarrierSpec spec_;
    std::unordered_map<const void*, TruncatedSeries> memo_;
};

} // namespace

TruncatedSeries interp_guarded(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring,
                               std::size_t bound) {
    return GuardedInterp(alphabets, semiring, bound).eval(e);
}

TruncatedSeries interp_free(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring,
                            std::size_t bound) {
    return FreeInterp(alphabets, semiring, bound).eval(e);
}

std::string format_word(const Word& w, const CarrierSpec& spec, const Alphabets& alphabets) {
    if (spec.kind == Carrier::Guarded) return print(GuardedString(w, spec.atom_width), alphabets);
    if (w.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += free_letter_name(alphabets, w[i]);
    }
    return out;
}

std::string format_series(const TruncatedSeries& r, const Alphabets& alphabets) {
    std::ostringstream out;
    for (const auto& [w, c] : r.sorted())
        out << format_word(w, r.spec(), alphabets) << "  " << r.semiring()->token(c) << '\n';
    return out.str();
}

} // namespace wkat
