#include "wkat/equiv.hpp"

#include "wkat/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

namespace wkat {

std::string EquivVerdict::describe(const Alphabets& alphabets, const Semiring& semiring) const {
    if (agrees()) return "AgreeUpTo(" + std::to_string(bound) + ")";
    const GuardedString w(*witness, static_cast<unsigned>(alphabets.tests().size()));
    return "Distinguisher " + print(w, alphabets) + ": " + semiring.token(left) + " vs " + semiring.token(right);
}

EquivVerdict bounded_equiv(const Expr& e, const Expr& f, const Alphabets& alphabets, const SemiringRef& semiring,
                           std::size_t bound) {
    const TruncatedSeries a = interp_guarded(e, alphabets, semiring, bound);
    const TruncatedSeries b = interp_guarded(f, alphabets, semiring, bound);
    EquivVerdict v;
    v.bound = bound;
    std::vector<Word> keys;
    for (const auto& [w, s] : a.coefficients())
        if (b.at(w) != s) keys.push_back(w);
    for (const auto& [w, s] : b.coefficients())
        if (a.at(w) != s) keys.push_back(w);
    if (!keys.empty()) {
        const Word& w = *std::min_element(keys.begin(), keys.end(), word_less);
        v.witness = w;
        v.left = a.at(w);
        v.right = b.at(w);
    }
    return v;
}

// --------------------------------------------------------------- Generator

Generator::Generator(GenConfig config, Alphabets alphabets, SemiringRef semiring)
    : config_(config), alphabets_(std::move(alphabets)), semiring_(std::move(semiring)), rng_(config.seed) {
    if (!semiring_) throw MismatchError("generator without a semiring");
    if (config_.max_depth < 1) throw StructuralError("generator depth must be at least 1");
    if (alphabets_.actions().empty() && alphabets_.tests().empty())
        throw StructuralError("generator needs at least one action or test letter");
}

std::size_t Generator::below(std::size_t n) {
    if (n == 0) throw StructuralError("empty generator pool");
    // Rejection sampling keeps the draw identical across standard libraries.
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = 0;
    do {
        x = rng_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

bool Generator::chance(unsigned percent) { return below(100) < percent; }

Elem Generator::element() { return static_cast<Elem>(below(semiring_->size())); }

Elem Generator::nonzero_element() {
    if (semiring_->size() < 2) return semiring_->zero();
    for (;;) {
        const Elem x = element();
        if (x != semiring_->zero()) return x;
    }
}

Expr Generator::expr() { return expr(config_.max_depth); }

TestExpr Generator::test(unsigned depth) {
    const std::size_t k = alphabets_.tests().size();
    if (depth <= 1 || chance(40)) {
        if (k == 0 || chance(15)) return chance(50) ? TestExpr::one() : TestExpr::zero();
        TestExpr p = TestExpr::letter(static_cast<Symbol>(below(k)));
        return chance(50) ? p : TestExpr::negate(p);
    }
    switch (below(3)) {
    case 0: return TestExpr::negate(test(depth - 1));
    case 1: return TestExpr::disj(test(depth - 1), test(depth - 1));
    default: return TestExpr::conj(test(depth - 1), test(depth - 1));
    }
}

Expr Generator::expr(unsigned depth) {
    const std::size_t actions = alphabets_.actions().size();
    const unsigned wa = actions ? config_.w_action : 0;
    auto leaf = [&]() -> Expr {
        if (wa && below(wa + config_.w_test) < wa) return Expr::action(static_cast<Symbol>(below(actions)));
        return Expr::test(test(1));
    };
    if (depth <= 1) return leaf();
    const unsigned weights[] = {wa, config_.w_test, config_.w_scalar, config_.w_sum, config_.w_product, config_.w_star};
    unsigned total = 0;
    for (unsigned w : weights) total += w;
    if (total == 0) return leaf();
    std::size_t pick = below(total);
    std::size_t kind = 0;
    while (pick >= weights[kind]) pick -= weights[kind++];
    switch (kind) {
    case 0: return Expr::action(static_cast<Symbol>(below(actions)));
    case 1: return Expr::test(test(std::min(depth, 2u)));
    case 2: return Expr::scalar(expr(depth - 1), element());
    case 3: return Expr::sum(expr(depth - 1), expr(depth - 1));
    case 4: return Expr::product(expr(depth - 1), expr(depth - 1));
    default: return Expr::star(expr(depth - 1));
    }
}

Matrix Generator::matrix(std::size_t states) {
    Matrix m(states, semiring_);
    for (std::size_t i = 0; i < states; ++i)
        for (std::size_t j = 0; j < states; ++j)
            if (chance(config_.density_percent)) m.set(i, j, nonzero_element());
    return m;
}

TransitionSystem Generator::system() { return system(1 + below(config_.max_states)); }

TransitionSystem Generator::system(std::size_t states) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < states; ++i) names.push_back("q" + std::to_string(i));
    TransitionSystem ts(alphabets_, semiring_, names);
    for (Symbol a = 0; a < alphabets_.actions().size(); ++a) ts.rel(a) = matrix(states);
    for (Symbol p = 0; p < alphabets_.tests().size(); ++p)
        for (std::size_t i = 0; i < states; ++i) ts.sat(p)[i] = chance(50);
    return ts;
}

TruncatedSeries Generator::series(const CarrierSpec& spec, std::size_t support) {
    TruncatedSeries r(spec, semiring_);
    for (std::size_t k = 0; k < support; ++k) {
        Word w;
        if (spec.kind == Carrier::Guarded) {
            const std::size_t len = 1 + below(spec.bound);
            for (std::size_t i = 0; i < len; ++i) {
                if (i) w.push_back(static_cast<std::uint16_t>(below(spec.letters)));
                w.push_back(static_cast<std::uint16_t>(below(spec.atoms())));
            }
        } else {
            const std::size_t len = below(spec.bound + 1);
            for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<std::uint16_t>(below(spec.letters)));
        }
        r.set(w, nonzero_element());
    }
    return r;
}

GuardedSum Generator::guarded_sum(const Normalizer& n, std::size_t summands) {
    const auto& atoms = n.atoms();
    std::vector<GuardedExpr> out;
    for (std::size_t k = 0; k < summands; ++k) {
        const Atom g = atoms[below(atoms.size())];
        if (chance(30)) {
            out.push_back(GuardedExpr::atom(g, nonzero_element()));
        } else {
            const Atom h = atoms[below(atoms.size())];
            out.push_back(GuardedExpr::span(g, expr(2), h, nonzero_element()));
        }
    }
    return n.canonicalize(out);
}

// ------------------------------------------------------------ SuiteReport

bool SuiteReport::ok() const noexcept { return failures() == 0; }

std::size_t SuiteReport::failures() const noexcept {
    std::size_t n = 0;
    for (const auto& a : axioms) n += a.failures;
    return n;
}

const AxiomTally* SuiteReport::find(const std::string& name) const {
    for (const auto& a : axioms)
        if (a.name == name) return &a;
    return nullptr;
}

AxiomTally& SuiteReport::tally(const std::string& name, bool implication) {
    for (auto& a : axioms)
        if (a.name == name) return a;
    axioms.push_back({name, 0, 0, 0, implication, {}});
    return axioms.back();
}

std::string SuiteReport::text() const {
    std::ostringstream out;
    out << "suite " << suite << " over " << semiring << " (" << samples << " samples): "
        << (ok() ? "PASS" : "FAIL") << '\n';
    for (const auto& a : axioms) {
        out << "  " << std::left << std::setw(28) << a.name << std::right << std::setw(6) << a.instances
            << " checked " << std::setw(4) << a.failures << " failed";
        if (a.implication) out << "  (premise held " << a.premise_held << ")";
        out << '\n';
        if (!a.first_witness.empty()) out << "    witness: " << a.first_witness << '\n';
    }
    return out.str();
}

std::string SuiteReport::json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["semiring"] = semiring;
    j["samples"] = samples;
    j["ok"] = ok();
    j["axioms"] = nlohmann::json::array();
    for (const auto& a : axioms) {
        nlohmann::json x{{"name", a.name}, {"samples", a.instances}, {"failures", a.failures}};
        if (a.implication) x["premise_held"] = a.premise_held;
        x["first_witness"] = a.first_witness.empty() ? nlohmann::json(nullptr) : nlohmann::json(a.first_witness);
        j["axioms"].push_back(std::move(x));
    }
    return j.dump();
}

// ------------------------------------------------------------- axiom suite

namespace {

std::string clip(std::string s, std::size_t max = 400) {
    if (s.size() > max) s = s.substr(0, max) + " ...";
    for (char& c : s)
        if (c == '\n') c = ';';
    return s;
}

struct SeriesModel {
    using V = TruncatedSeries;
    const Alphabets& al;
    SemiringRef s;
    CarrierSpec spec;

    V zero() const { return zero_series(spec, s); }
    V one() const { return unit_series(spec, s); }
    V add(const V& a, const V& b) const { return series_add(a, b); }
    V mul(const V& a, const V& b) const { return series_mul(a, b); }
    V scalar(const V& a, Elem t) const { return series_scalar(a, t); }
    V star(const V& a) const { return series_star(a); }
    bool pointwise_leq(const V& a, const V& b) const { return series_leq(a, b); }
    V sample(Generator& g) const {
        if (g.chance(50)) return interp_guarded(g.expr(3), al, s, spec.bound);
        return g.series(spec, 1 + g.below(6));
    }
    std::pair<V, V> sample_test(Generator& g) const {
        const TestExpr b = g.test(2);
        return {interp_guarded(Expr::test(b), al, s, spec.bound),
                interp_guarded(Expr::test(TestExpr::negate(b)), al, s, spec.bound)};
    }
    V complement(const V& b) const {
        V out = one();
        for (const auto& [w, x] : b.coefficients()) out.set(w, s->zero());
        return out;
    }
    std::string describe(const V& v) const { return clip(format_series(v, al)); }
};

struct MatrixModel {
    using V = Matrix;
    SemiringRef s;
    std::size_t n;
    std::vector<std::string> names;

    V zero() const { return Matrix(n, s); }
    V one() const { return Matrix::identity(n, s); }
    V add(const V& a, const V& b) const { return mat_add(a, b); }
    V mul(const V& a, const V& b) const { return mat_mul(a, b); }
    V scalar(const V& a, Elem t) const { return mat_scalar(a, t); }
    V star(const V& a) const { return mat_star(a); }
    bool pointwise_leq(const V& a, const V& b) const { return mat_leq(a, b); }
    V sample(Generator& g) const { return g.matrix(n); }
    std::pair<V, V> sample_test(Generator& g) const {
        std::vector<bool> on(n);
        for (std::size_t i = 0; i < n; ++i) on[i] = g.chance(50);
        Matrix b = Matrix::diagonal(on, s);
        Matrix nb = mat_complement(b);
        return {b, nb};
    }
    V complement(const V& b) const { return mat_complement(b); }
    std::string describe(const V& v) const { return clip(format_matrix(v, names)); }
};

template <class Model>
void check_sample(const Model& m, Generator& g, SuiteReport& rep, std::size_t sample) {
    using V = typename Model::V;
    const Semiring& S = *m.s;
    const bool idem = S.additively_idempotent();
    auto leq = [&](const V& a, const V& b) { return idem ? m.add(a, b) == b : m.pointwise_leq(a, b); };

    const V x = m.sample(g), y = m.sample(g), z = m.sample(g), w = m.sample(g);
    const Elem s = g.element(), t = g.element();
    const auto [b, nb] = m.sample_test(g);
    const auto [c, nc] = m.sample_test(g);
    const auto [d, nd] = m.sample_test(g);
    const V zero = m.zero(), one = m.one();

    auto vals = [&](std::initializer_list<std::pair<const char*, const V*>> vs, bool scalars = false) {
        std::string out = "sample " + std::to_string(sample);
        for (const auto& [name, v] : vs) out += std::string(", ") + name + " = [" + m.describe(*v) + "]";
        if (scalars) out += ", s = " + S.token(s) + ", t = " + S.token(t);
        return out;
    };
    auto law = [&](const char* name, bool holds, const std::string& witness) {
        AxiomTally& a = rep.tally(name);
        ++a.instances;
        if (!holds) {
            ++a.failures;
            if (a.first_witness.empty()) a.first_witness = witness;
        }
    };
    auto implication = [&](const char* name, bool premise, bool conclusion, const std::string& witness) {
        AxiomTally& a = rep.tally(name, true);
        ++a.instances;
        if (!premise) return;
        ++a.premise_held;
        if (!conclusion) {
            ++a.failures;
            if (a.first_witness.empty()) a.first_witness = witness;
        }
    };
    const auto xyz = [&] { return vals({{"x", &x}, {"y", &y}, {"z", &z}}); };
    const auto xy_s = [&] { return vals({{"x", &x}, {"y", &y}}, true); };

    // Idempotent semiring
    law("add-assoc", m.add(m.add(x, y), z) == m.add(x, m.add(y, z)), xyz());
    law("add-comm", m.add(x, y) == m.add(y, x), xyz());
    law("add-zero", m.add(x, zero) == x, xyz());
    if (idem) law("add-idem", m.add(x, x) == x, xyz());
    law("mul-assoc", m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z)), xyz());
    law("mul-one", m.mul(one, x) == x && m.mul(x, one) == x, xyz());
    law("mul-zero", m.mul(zero, x) == zero && m.mul(x, zero) == zero, xyz());
    law("distrib-left", m.mul(x, m.add(y, z)) == m.add(m.mul(x, y), m.mul(x, z)), xyz());
    law("distrib-right", m.mul(m.add(x, y), z) == m.add(m.mul(x, z), m.mul(y, z)), xyz());

    // Star unrolling and fixpoint rules
    const V xs = m.star(x);
    law("star-unroll-left", leq(m.add(one, m.mul(x, xs)), xs), xyz());
    law("star-unroll-right", leq(m.add(one, m.mul(xs, x)), xs), xyz());
    implication("star-ind-left", leq(m.add(y, m.mul(x, z)), z), leq(m.mul(xs, y), z), xyz());
    implication("star-ind-right", leq(m.add(y, m.mul(z, x)), z), leq(m.mul(y, xs), z), xyz());
    {
        // premise-satisfying z built from x, y and noise w
        const V zl = m.mul(xs, m.add(y, w));
        const V zr = m.mul(m.add(y, w), xs);
        const auto wit = [&] { return vals({{"x", &x}, {"y", &y}, {"w", &w}}); };
        implication("star-ind-left", leq(m.add(y, m.mul(x, zl)), zl), leq(m.mul(xs, y), zl), wit());
        implication("star-ind-right", leq(m.add(y, m.mul(zr, x)), zr), leq(m.mul(y, xs), zr), wit());
    }

    // Right semimodule
    law("scalar-one", m.scalar(x, S.one()) == x, xy_s());
    law("scalar-zero", m.scalar(x, S.zero()) == zero && m.scalar(zero, s) == zero, xy_s());
    law("scalar-assoc", m.scalar(m.scalar(x, s), t) == m.scalar(x, S.mul(s, t)), xy_s());
    law("scalar-distrib-expr", m.scalar(m.add(x, y), s) == m.add(m.scalar(x, s), m.scalar(y, s)), xy_s());
    law("scalar-distrib-weight", m.scalar(x, S.add(s, t)) == m.add(m.scalar(x, s), m.scalar(x, t)), xy_s());
    // (x y) @ s = x (y @ s) = (x @ s) y
    const V xy = m.mul(x, y);
    law("scalar-product", m.scalar(xy, s) == m.mul(x, m.scalar(y, s)) && m.scalar(xy, s) == m.mul(m.scalar(x, s), y),
        xy_s());
    // 1 @ s* <= (1 @ s)*
    law("scalar-star", leq(m.scalar(one, S.star(s)), m.star(m.scalar(one, s))), xy_s());

    // Boolean tests
    const auto bc = [&] { return vals({{"b", &b}, {"c", &c}, {"d", &d}}); };
    law("test-complement-mul", m.mul(b, nb) == zero && m.mul(nb, b) == zero, bc());
    law("test-complement-add", m.add(b, nb) == one, bc());
    law("test-mul-comm", m.mul(b, c) == m.mul(c, b), bc());
    law("test-mul-idem", m.mul(b, b) == b, bc());
    law("test-below-one", leq(b, one), bc());
    law("test-distrib", m.add(b, m.mul(c, d)) == m.mul(m.add(b, c), m.add(b, d)), bc());
    law("test-de-morgan", m.add(nb, nc) == m.complement(m.mul(b, c)), bc());
    (void)nd;
}

} // namespace


SuiteReport axiom_suite(const Alphabets& alphabets, const SemiringRef& semiring, const SuiteConfig& config) {
    SuiteReport rep;
    rep.semiring = semiring->name();
    rep.samples = config.samples;
    Generator g(config.gen, alphabets, semiring);
    if (config.model == ModelKind::Series) {
        rep.suite = "series-model(L=" + std::to_string(config.bound) + ")";
        const SeriesModel m{alphabets, semiring, CarrierSpec::guarded(alphabets, config.bound)};
        for (std::size_t i = 0; i < config.samples; ++i) check_sample(m, g, rep, i);
    } else {
        rep.suite = "matrix-model(|Q|<=" + std::to_string(config.max_states) + ")";
        for (std::size_t i = 0; i < config.samples; ++i) {
            MatrixModel m{semiring, 1 + g.below(config.max_states), {}};
            for (std::size_t q = 0; q < m.n; ++q) m.names.push_back("q" + std::to_string(q));
            check_sample(m, g, rep, i);
        }
    }
    return rep;
}

namespace {

void record(AxiomTally& a, bool holds, const std::function<std::string()>& witness) {
    ++a.instances;
    if (holds) return;
    ++a.failures;
    if (a.first_witness.empty()) a.first_witness = clip(witness());
}

} // namespace

SuiteReport hat_soundness_suite(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t samples,
                                std::size_t systems, std::size_t bound, const GenConfig& gen) {
    SuiteReport rep{"hat-soundness", semiring->name(), samples, {}};
    Generator g(gen, alphabets, semiring);
    const Normalizer n(alphabets, semiring);
    std::vector<TransitionSystem> pool;
    for (std::size_t i = 0; i < systems; ++i) pool.push_back(g.system());
    AxiomTally& series = rep.tally("series: e = hat(e)");
    AxiomTally& matrices = rep.tally("matrices: e = hat(e)");
    for (std::size_t i = 0; i < samples; ++i) {
        const Expr e = g.expr();
        const Expr he = n.to_expr(n.hat(e));
        const EquivVerdict v = bounded_equiv(e, he, alphabets, semiring, bound);
        record(series, v.agrees(),
               [&] { return print(e, alphabets, *semiring) + ": " + v.describe(alphabets, *semiring); });
        for (const auto& ts : pool)
            record(matrices, eval_M(ts, e) == eval_M(ts, he), [&] {
                return print(e, alphabets, *semiring) + " on system [" + format_transition_system(ts) + "]";
            });
    }
    return rep;
}

SuiteReport hat_properness_suite(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t samples,
                                 std::size_t bound, const GenConfig& gen) {
    SuiteReport rep{"hat-properness", semiring->name(), samples, {}};
    Generator g(gen, alphabets, semiring);
    const Normalizer n(alphabets, semiring);
    const unsigned width = static_cast<unsigned>(alphabets.tests().size());
    // A guarded string of k atoms spells k |Phi| + k - 1 letters.
    const std::size_t free_bound = bound * (width + 1) - 1;
    AxiomTally& vanish = rep.tally("free: zero off guarded words");
    AxiomTally& match = rep.tally("free = guarded on guarded words");
    for (std::size_t i = 0; i < samples; ++i) {
        const Expr e = g.expr();
        const Expr he = n.to_expr(n.hat(e));
        const TruncatedSeries gs = interp_guarded(he, alphabets, semiring, bound);
        const TruncatedSeries ls = interp_free(he, alphabets, semiring, free_bound);
        TruncatedSeries::Map spelled;
        for (const auto& [w, s] : gs.coefficients()) spelled.emplace(spell(GuardedString(w, width), alphabets), s);
        // Every free word of the support must spell a guarded string; the
        // ones within the guarded bound must carry the same coefficient.
        bool off_guarded_zero = true;
        bool agree = true;
        std::string witness;
        for (const auto& [w, s] : ls.coefficients()) {
            const bool guarded_shape = [&] {
                // shape: (literal x |Phi|, action)* literal x |Phi|
                const std::size_t acts = alphabets.actions().size();
                if ((w.size() + 1) % (width + 1) != 0) return false;
                for (std::size_t k = 0; k < w.size(); ++k) {
                    const std::size_t pos = k % (width + 1);
                    if (pos == width) {
                        if (w[k] >= acts) return false;
                    } else if (w[k] != acts + 2 * pos && w[k] != acts + 2 * pos + 1) {
                        return false;
                    }
                }
                return true;
            }();
            if (!guarded_shape) {
                off_guarded_zero = false;
                if (witness.empty()) witness = format_word(w, ls.spec(), alphabets);
                continue;
            }
            auto it = spelled.find(w);
            if (it == spelled.end() || it->second != s) {
                agree = false;
                if (witness.empty()) witness = format_word(w, ls.spec(), alphabets);
            }
        }
        for (const auto& [w, s] : spelled)
            if (ls.at(w) != s) {
                agree = false;
                if (witness.empty()) witness = format_word(w, ls.spec(), alphabets);
            }
        const auto wit = [&] { return print(e, alphabets, *semiring) + " at " + witness; };
        record(vanish, off_guarded_zero, wit);
        record(match, agree, wit);
    }
    return rep;
}

SuiteReport guarded_star_suite(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t samples,
                               std::size_t bound, const GenConfig& gen) {
    SuiteReport rep{"guarded-star", semiring->name(), samples, {}};
    Generator g(gen, alphabets, semiring);
    const Normalizer n(alphabets, semiring);
    AxiomTally& a = rep.tally("u* = star(u)");
    for (std::size_t i = 0; i < samples; ++i) {
        const GuardedSum u = g.guarded_sum(n, 1 + g.below(4));
        const Expr lhs = Expr::star(n.to_expr(u));
        const Expr rhs = n.to_expr(n.star(u));
        const EquivVerdict v = bounded_equiv(lhs, rhs, alphabets, semiring, bound);
        record(a, v.agrees(), [&] {
            return print(n.to_expr(u), alphabets, *semiring) + ": " + v.describe(alphabets, *semiring);
        });
    }
    return rep;
}

SuiteReport cayley_suite(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t samples,
                         std::size_t bound, const GenConfig& gen) {
    SuiteReport rep{"cayley(L=" + std::to_string(bound) + ")", semiring->name(), samples, {}};
    Generator g(gen, alphabets, semiring);
    const TransitionSystem cay = cayley_system(alphabets, semiring, bound);
    AxiomTally& a = rep.tally("cay(G(e)) = M(e)");
    for (std::size_t i = 0; i < samples; ++i) {
        const Expr e = g.expr();
        const AgreementReport r = check_cayley(e, cay, bound);
        record(a, r.ok(), [&] {
            const auto& m = r.mismatches.front();
            return print(e, alphabets, *semiring) + " at (" + m.row + ", " + m.column + "): " + m.from_series +
                   " vs " + m.from_system;
        });
    }
    return rep;
}

SuiteReport truncation_suite(const Alphabets& alphabets, const SemiringRef& semiring, std::size_t samples,
                             std::size_t bound, const GenConfig& gen) {
    SuiteReport rep{"truncation", semiring->name(), samples, {}};
    Generator g(gen, alphabets, semiring);
    AxiomTally& a = rep.tally("G(e, L+1) | L = G(e, L)");
    for (std::size_t i = 0; i < samples; ++i) {
        const Expr e = g.expr();
        const TruncatedSeries lo = interp_guarded(e, alphabets, semiring, bound);
        const TruncatedSeries hi = interp_guarded(e, alphabets, semiring, bound + 1);
        record(a, hi.restrict(bound) == lo, [&] { return print(e, alphabets, *semiring); });
    }
    return rep;
}

std::vector<SuiteReport> selftest(std::uint64_t seed, std::size_t samples) {
    std::vector<SuiteReport> out;
    const Alphabets al({"a", "b"}, {"p"});
    GenConfig gen;
    gen.seed = seed;
    for (const auto& s : semirings::builtins()) {
        SuiteReport sr{"semiring-axioms", s->name(), 1, {}};
        for (const auto& c : verify_copi(*s).checks) {
            AxiomTally& t = sr.tally(c.name);
            t.instances = 1;
            if (c.required && !c.passed) {
                t.failures = 1;
                for (Elem x : c.witness) t.first_witness += (t.first_witness.empty() ? "" : " ") + s->token(x);
            }
        }
        out.push_back(std::move(sr));
    }
    for (const auto& s : semirings::builtins()) {
        SuiteConfig cfg;
        cfg.samples = samples;
        cfg.gen = gen;
        cfg.bound = 3;
        cfg.model = ModelKind::Series;
        out.push_back(axiom_suite(al, s, cfg));
        cfg.model = ModelKind::Matrix;
        out.push_back(axiom_suite(al, s, cfg));
    }
    for (const char* name : {"BOOL", "TROP3", "LUK3"}) {
        const SemiringRef s = *semirings::builtin(name);
        out.push_back(hat_soundness_suite(al, s, samples, 4, 3, gen));
        out.push_back(hat_properness_suite(al, s, samples, 3, gen));
        out.push_back(guarded_star_suite(al, s, samples, 3, gen));
        out.push_back(cayley_suite(al, s, samples, 3, gen));
        out.push_back(truncation_suite(al, s, samples, 3, gen));
    }
    return out;
}

} // namespace wkat
