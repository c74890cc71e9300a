#include "wkat/semiring.hpp"

#include "wkat/error.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace wkat {

Semiring::Semiring(std::string name, std::vector<std::string> elements, std::vector<Elem> add,
                   std::vector<Elem> mul, Elem zero, Elem one, std::vector<bool> leq)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      add_(std::move(add)),
      mul_(std::move(mul)),
      zero_(zero),
      one_(one),
      leq_(std::move(leq)) {
    const std::size_t n = elements_.size();
    if (n == 0) throw StructuralError("semiring '" + name_ + "' has no elements");
    if (n > max_elements) throw StructuralError("semiring '" + name_ + "' has too many elements");
    std::vector<std::string> sorted = elements_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw StructuralError("semiring '" + name_ + "' lists an element twice");
    for (const auto& t : elements_)
        if (t.empty() || std::any_of(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c) || c == '}'; }))
            throw StructuralError("semiring '" + name_ + "': invalid element token '" + t + "'");
    if (add_.size() != n * n) throw StructuralError("semiring '" + name_ + "': add table is not " + std::to_string(n) + "x" + std::to_string(n));
    if (mul_.size() != n * n) throw StructuralError("semiring '" + name_ + "': mul table is not " + std::to_string(n) + "x" + std::to_string(n));
    if (leq_.size() != n * n) throw StructuralError("semiring '" + name_ + "': leq table is not " + std::to_string(n) + "x" + std::to_string(n));
    auto in_range = [n](Elem x) { return x < n; };
    if (!std::all_of(add_.begin(), add_.end(), in_range) || !std::all_of(mul_.begin(), mul_.end(), in_range))
        throw StructuralError("semiring '" + name_ + "': table entry outside the element list");
    if (zero_ >= n || one_ >= n) throw StructuralError("semiring '" + name_ + "': zero/one outside the element list");
}

std::optional<Elem> Semiring::find(std::string_view token) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i] == token) return static_cast<Elem>(i);
    return std::nullopt;
}

Elem Semiring::element(std::string_view token) const {
    if (auto e = find(token)) return *e;
    throw StructuralError("'" + std::string(token) + "' is not an element of semiring " + name_);
}

bool Semiring::additively_idempotent() const noexcept {
    for (std::size_t x = 0; x < size(); ++x)
        if (add(static_cast<Elem>(x), static_cast<Elem>(x)) != x) return false;
    return true;
}

Elem Semiring::star(Elem s) const {
    // X_{k+1} = 1 + s X_k from X_0 = 0 enumerates the partial sums of powers;
    // a plateau is a fixpoint because the step only depends on X_k.
    Elem x = zero_;
    const std::size_t ceiling = size() * size() + 2;
    for (std::size_t step = 0; step <= ceiling; ++step) {
        const Elem next = add(one_, mul(s, x));
        if (next == x) return x;
        x = next;
    }
    throw InvariantViolation("star of '" + token(s) + "' in " + name_ + " did not stabilise");
}

bool operator==(const Semiring& a, const Semiring& b) {
    return a.name_ == b.name_ && a.elements_ == b.elements_ && a.add_ == b.add_ && a.mul_ == b.mul_ &&
           a.zero_ == b.zero_ && a.one_ == b.one_ && a.leq_ == b.leq_;
}

Weight::Weight(SemiringRef semiring, Elem index) : semiring_(std::move(semiring)), index_(index) {
    if (!semiring_) throw MismatchError("weight without a semiring");
    if (index_ >= semiring_->size()) throw StructuralError("weight index out of range for " + semiring_->name());
}

namespace {

void require_same(const Weight& a, const Weight& b) {
    if (a.semiring() != b.semiring() && !(*a.semiring() == *b.semiring()))
        throw MismatchError("weights from different semirings: " + a.semiring()->name() + " vs " +
                            b.semiring()->name());
}

} // namespace

Weight operator+(const Weight& a, const Weight& b) {
    require_same(a, b);
    return {a.semiring_, a.semiring_->add(a.index_, b.index_)};
}

Weight operator*(const Weight& a, const Weight& b) {
    require_same(a, b);
    return {a.semiring_, a.semiring_->mul(a.index_, b.index_)};
}

bool operator==(const Weight& a, const Weight& b) {
    require_same(a, b);
    return a.index_ == b.index_;
}

Weight scalar_star(const Weight& s) { return {s.semiring(), s.semiring()->star(s.index())}; }

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed || !c.required; });
}

const AxiomCheck* VerificationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

const AxiomCheck* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (c.required && !c.passed) return &c;
    return nullptr;
}

namespace {

// Runs `law` over every tuple of the given arity and records the first
// counterexample.
template <std::size_t Arity, typename Law>
AxiomCheck exhaust(std::string name, bool required, std::size_t n, Law law) {
    AxiomCheck check{std::move(name), required, true, {}};
    std::vector<Elem> t(Arity, 0);
    const std::size_t total = [&] {
        std::size_t p = 1;
        for (std::size_t i = 0; i < Arity; ++i) p *= n;
        return p;
    }();
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = Arity; i-- > 0;) {
            t[i] = static_cast<Elem>(c % n);
            c /= n;
        }
        if (!law(t)) {
            check.passed = false;
            check.witness = t;
            return check;
        }
    }
    return check;
}

} // namespace

VerificationReport verify_copi(const Semiring& s) {
    const std::size_t n = s.size();
    const Elem zero = s.zero();
    const Elem one = s.one();
    auto add = [&](Elem x, Elem y) { return s.add(x, y); };
    auto mul = [&](Elem x, Elem y) { return s.mul(x, y); };
    auto leq = [&](Elem x, Elem y) { return s.leq(x, y); };
    using T = const std::vector<Elem>&;

    VerificationReport r;
    auto& c = r.checks;
    c.push_back(exhaust<3>("add-associative", true, n, [&](T t) { return add(add(t[0], t[1]), t[2]) == add(t[0], add(t[1], t[2])); }));
    c.push_back(exhaust<3>("mul-associative", true, n, [&](T t) { return mul(mul(t[0], t[1]), t[2]) == mul(t[0], mul(t[1], t[2])); }));
    c.push_back(exhaust<2>("add-commutative", true, n, [&](T t) { return add(t[0], t[1]) == add(t[1], t[0]); }));
    c.push_back(exhaust<2>("mul-commutative", true, n, [&](T t) { return mul(t[0], t[1]) == mul(t[1], t[0]); }));
    c.push_back(exhaust<1>("add-identity", true, n, [&](T t) { return add(zero, t[0]) == t[0] && add(t[0], zero) == t[0]; }));
    c.push_back(exhaust<1>("mul-identity", true, n, [&](T t) { return mul(one, t[0]) == t[0] && mul(t[0], one) == t[0]; }));
    c.push_back(exhaust<1>("zero-annihilates", true, n, [&](T t) { return mul(zero, t[0]) == zero && mul(t[0], zero) == zero; }));
    c.push_back(exhaust<3>("left-distributive", true, n, [&](T t) { return mul(t[0], add(t[1], t[2])) == add(mul(t[0], t[1]), mul(t[0], t[2])); }));
    c.push_back(exhaust<3>("right-distributive", true, n, [&](T t) { return mul(add(t[0], t[1]), t[2]) == add(mul(t[0], t[2]), mul(t[1], t[2])); }));
    c.push_back(exhaust<1>("add-idempotent", false, n, [&](T t) { return add(t[0], t[0]) == t[0]; }));
    c.push_back(exhaust<1>("order-reflexive", true, n, [&](T t) { return leq(t[0], t[0]); }));
    c.push_back(exhaust<2>("order-antisymmetric", true, n, [&](T t) { return !(leq(t[0], t[1]) && leq(t[1], t[0])) || t[0] == t[1]; }));
    c.push_back(exhaust<3>("order-transitive", true, n, [&](T t) { return !(leq(t[0], t[1]) && leq(t[1], t[2])) || leq(t[0], t[2]); }));
    c.push_back(exhaust<3>("add-monotone", true, n, [&](T t) {
        return !leq(t[0], t[1]) || (leq(add(t[0], t[2]), add(t[1], t[2])) && leq(add(t[2], t[0]), add(t[2], t[1])));
    }));
    c.push_back(exhaust<3>("mul-monotone", true, n, [&](T t) {
        return !leq(t[0], t[1]) || (leq(mul(t[0], t[2]), mul(t[1], t[2])) && leq(mul(t[2], t[0]), mul(t[2], t[1])));
    }));
    c.push_back(exhaust<1>("zero-bounded", true, n, [&](T t) { return leq(zero, t[0]); }));
    c.push_back(exhaust<1>("integral", true, n, [&](T t) { return leq(t[0], one); }));
    return r;
}

std::string format_report(const Semiring& s, const VerificationReport& report) {
    std::ostringstream out;
    out << "semiring " << s.name() << " (" << s.size() << " elements)\n";
    for (const auto& c : report.checks) {
        out << "  " << (c.passed ? "pass" : (c.required ? "FAIL" : "no  ")) << "  " << c.name;
        if (!c.required) out << " (informative)";
        if (!c.passed) {
            out << "  witness:";
            for (Elem e : c.witness) out << ' ' << s.token(e);
        }
        out << '\n';
    }
    out << (report.ok() ? "verdict: copi-semiring\n" : "verdict: NOT a copi-semiring\n");
    return out.str();
}

std::vector<bool> derive_natural_order(std::size_t n, const std::vector<Elem>& add) {
    if (add.size() != n * n) throw StructuralError("add table is not square");
    for (std::size_t x = 0; x < n; ++x)
        if (add[x * n + x] != x)
            throw UnsupportedDerivation("addition is not idempotent (x + x != x for element index " + std::to_string(x) +
                                        "); supply the order explicitly with 'leq' lines");
    std::vector<bool> leq(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) leq[x * n + y] = add[x * n + y] == y;
    return leq;
}

void require_integral(const Semiring& s) {
    for (std::size_t x = 0; x < s.size(); ++x)
        if (!s.leq(static_cast<Elem>(x), s.one()))
            throw SemiringRequirementError("semiring " + s.name() + " is not integral: element '" +
                                           s.token(static_cast<Elem>(x)) + "' is not below one '" +
                                           s.token(s.one()) + "'");
}

namespace semirings {

namespace {

SemiringRef make(std::string name, std::vector<std::string> tokens, Elem zero, Elem one,
                 const std::function<Elem(Elem, Elem)>& add, const std::function<Elem(Elem, Elem)>& mul) {
    const std::size_t n = tokens.size();
    std::vector<Elem> a(n * n), m(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            a[x * n + y] = add(static_cast<Elem>(x), static_cast<Elem>(y));
            m[x * n + y] = mul(static_cast<Elem>(x), static_cast<Elem>(y));
        }
    auto leq = derive_natural_order(n, a);
    return std::make_shared<const Semiring>(std::move(name), std::move(tokens), std::move(a), std::move(m), zero, one,
                                            std::move(leq));
}

std::string upper(std::string_view s) {
    std::string u(s);
    for (auto& ch : u) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return u;
}

} // namespace

SemiringRef boolean() {
    static const SemiringRef b = make("BOOL", {"0", "1"}, 0, 1, [](Elem x, Elem y) { return static_cast<Elem>(x | y); },
                                      [](Elem x, Elem y) { return static_cast<Elem>(x & y); });
    return b;
}

SemiringRef tropical(unsigned k) {
    if (k == 0 || k + 1 > Semiring::max_elements) throw StructuralError("TROP(k) needs 1 <= k < 256");
    // Index i < k is the number i; index k is infinity.
    std::vector<std::string> tokens;
    for (unsigned i = 0; i < k; ++i) tokens.push_back(std::to_string(i));
    tokens.emplace_back("inf");
    const auto inf = static_cast<Elem>(k);
    return make("TROP" + std::to_string(k), std::move(tokens), inf, 0,
                [](Elem x, Elem y) { return std::min(x, y); },
                [inf](Elem x, Elem y) { return static_cast<Elem>(x == inf || y == inf || x + y >= inf ? inf : x + y); });
}

SemiringRef lukasiewicz(unsigned n) {
    if (n < 2 || n > Semiring::max_elements) throw StructuralError("LUK(n) needs 2 <= n <= 256");
    const unsigned d = n - 1;
    std::vector<std::string> tokens;
    for (unsigned m = 0; m <= d; ++m) {
        const unsigned g = std::gcd(m, d);
        if (m == 0) tokens.emplace_back("0");
        else if (m == d) tokens.emplace_back("1");
        else tokens.push_back(std::to_string(m / g) + "/" + std::to_string(d / g));
    }
    return make("LUK" + std::to_string(n), std::move(tokens), 0, static_cast<Elem>(d),
                [](Elem x, Elem y) { return std::max(x, y); },
                [d](Elem x, Elem y) { return static_cast<Elem>(x + y > d ? x + y - d : 0); });
}

std::vector<SemiringRef> builtins() {
    std::vector<SemiringRef> all{boolean()};
    for (unsigned k = 1; k <= 8; ++k) all.push_back(tropical(k));
    for (unsigned n = 2; n <= 8; ++n) all.push_back(lukasiewicz(n));
    return all;
}

std::optional<SemiringRef> builtin(std::string_view name) {
    const std::string u = upper(name);
    if (u == "BOOL" || u == "BOOLEAN") return boolean();
    auto numeric_suffix = [&](std::string_view prefix) -> std::optional<unsigned> {
        if (u.rfind(prefix, 0) != 0 || u.size() == prefix.size()) return std::nullopt;
        std::string digits = u.substr(prefix.size());
        if (digits.front() == '(' && digits.back() == ')') digits = digits.substr(1, digits.size() - 2);
        if (digits.empty() || digits.size() > 3 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
        return static_cast<unsigned>(std::stoul(digits));
    };
    if (auto k = numeric_suffix("TROP")) return tropical(*k);
    if (auto k = numeric_suffix("LUK")) return lukasiewicz(*k);
    return std::nullopt;
}

SemiringRef parse(std::istream& in) {
    std::string name;
    std::vector<std::string> elements;
    std::optional<std::string> zero, one;
    std::map<std::pair<std::string, std::string>, std::string> add, mul;
    std::vector<std::pair<std::string, std::string>> leq;
    bool natural = false;

    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw StructuralError("semiring file line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string t; words >> t;) w.push_back(t);
        if (w.empty()) continue;
        const std::string& kw = w[0];
        if (kw == "semiring") {
            if (w.size() != 2) fail("expected 'semiring NAME'");
            name = w[1];
        } else if (kw == "elements") {
            if (w.size() < 2) fail("expected at least one element");
            elements.assign(w.begin() + 1, w.end());
        } else if (kw == "zero" || kw == "one") {
            if (w.size() != 2) fail("expected '" + kw + " ELEMENT'");
            (kw == "zero" ? zero : one) = w[1];
        } else if (kw == "add" || kw == "mul") {
            if (w.size() != 4) fail("expected '" + kw + " x y z'");
            auto& table = kw == "add" ? add : mul;
            if (!table.emplace(std::pair{w[1], w[2]}, w[3]).second) fail("cell " + kw + "(" + w[1] + "," + w[2] + ") given twice");
        } else if (kw == "leq") {
            if (w.size() != 3) fail("expected 'leq x y'");
            leq.emplace_back(w[1], w[2]);
        } else if (kw == "order") {
            if (w.size() != 2 || w[1] != "natural") fail("expected 'order natural'");
            natural = true;
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (name.empty()) throw StructuralError("semiring file: missing 'semiring NAME'");
    if (elements.empty()) throw StructuralError("semiring file: missing 'elements'");
    if (!zero || !one) throw StructuralError("semiring file: missing 'zero' or 'one'");
    if (natural && !leq.empty()) throw StructuralError("semiring file: both 'order natural' and 'leq' lines given");
    if (!natural && leq.empty()) throw StructuralError("semiring file: no order given (use 'leq' lines or 'order natural')");

    const std::size_t n = elements.size();
    auto index = [&](const std::string& t) -> Elem {
        for (std::size_t i = 0; i < n; ++i)
            if (elements[i] == t) return static_cast<Elem>(i);
        throw StructuralError("semiring file: unknown element token '" + t + "'");
    };
    auto table = [&](const auto& cells, const char* op) {
        std::vector<Elem> t(n * n);
        for (const auto& [key, value] : cells) t[index(key.first) * n + index(key.second)] = index(value);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (!cells.count({elements[x], elements[y]}))
                    throw StructuralError(std::string("semiring file: unspecified cell ") + op + "(" + elements[x] + "," +
                                          elements[y] + ")");
        return t;
    };
    auto a = table(add, "add");
    auto m = table(mul, "mul");
    std::vector<bool> order;
    if (natural) {
        order = derive_natural_order(n, a);
    } else {
        order.assign(n * n, false);
        for (const auto& [x, y] : leq) order[index(x) * n + index(y)] = true;
    }
    const Elem z = index(*zero);
    const Elem o = index(*one);
    return std::make_shared<const Semiring>(name, elements, std::move(a), std::move(m), z, o, std::move(order));
}

SemiringRef parse_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

SemiringRef load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open semiring file '" + path + "'");
    return parse(in);
}

SemiringRef resolve(const std::string& name_or_path) {
    if (auto b = builtin(name_or_path)) return *b;
    if (std::filesystem::exists(name_or_path)) return load_file(name_or_path);
    throw StructuralError("unknown semiring '" + name_or_path + "' (not a builtin and no such file)");
}

} // namespace semirings

} // namespace wkat
