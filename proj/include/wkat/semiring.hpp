#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wkat {

// Index of an element inside a finite semiring's element list.
using Elem = std::uint16_t;

// A finite semiring given extensionally: element tokens, operation tables and
// a partial order. Tokens are opaque; "1/2" is a name, never a number.
//
// Construction only checks shape (square tables, indices in range). Whether
// the tables actually form a copi-semiring is answered by verify_copi().
class Semiring {
public:
    static constexpr std::size_t max_elements = 256;

    Semiring(std::string name, std::vector<std::string> elements, std::vector<Elem> add, std::vector<Elem> mul,
             Elem zero, Elem one, std::vector<bool> leq);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] const std::vector<std::string>& elements() const noexcept { return elements_; }
    [[nodiscard]] const std::string& token(Elem x) const { return elements_.at(x); }
    [[nodiscard]] std::optional<Elem> find(std::string_view token) const;
    // Like find() but throws StructuralError naming the semiring.
    [[nodiscard]] Elem element(std::string_view token) const;

    [[nodiscard]] Elem zero() const noexcept { return zero_; }
    [[nodiscard]] Elem one() const noexcept { return one_; }
    [[nodiscard]] Elem add(Elem x, Elem y) const noexcept { return add_[x * elements_.size() + y]; }
    [[nodiscard]] Elem mul(Elem x, Elem y) const noexcept { return mul_[x * elements_.size() + y]; }
    [[nodiscard]] bool leq(Elem x, Elem y) const noexcept { return leq_[x * elements_.size() + y]; }

    [[nodiscard]] bool additively_idempotent() const noexcept;

    // s* as the stabilised partial sums 1 + s + s^2 + ...
    [[nodiscard]] Elem star(Elem s) const;

    [[nodiscard]] const std::vector<Elem>& add_table() const noexcept { return add_; }
    [[nodiscard]] const std::vector<Elem>& mul_table() const noexcept { return mul_; }
    [[nodiscard]] const std::vector<bool>& leq_table() const noexcept { return leq_; }

    friend bool operator==(const Semiring& a, const Semiring& b);

private:
    std::string name_;
    std::vector<std::string> elements_;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    Elem zero_;
    Elem one_;
    std::vector<bool> leq_;
};

using SemiringRef = std::shared_ptr<const Semiring>;

// An element together with the semiring it lives in.
class Weight {
public:
    Weight(SemiringRef semiring, Elem index);

    [[nodiscard]] const SemiringRef& semiring() const noexcept { return semiring_; }
    [[nodiscard]] Elem index() const noexcept { return index_; }
    [[nodiscard]] const std::string& token() const { return semiring_->token(index_); }

    friend Weight operator+(const Weight& a, const Weight& b);
    friend Weight operator*(const Weight& a, const Weight& b);
    friend bool operator==(const Weight& a, const Weight& b);

private:
    SemiringRef semiring_;
    Elem index_;
};

[[nodiscard]] Weight scalar_star(const Weight& s);

struct AxiomCheck {
    std::string name;
    bool required = true;
    bool passed = true;
    // Element indices of the first counterexample, in the order the law names them.
    std::vector<Elem> witness;
};

struct VerificationReport {
    std::vector<AxiomCheck> checks;

    [[nodiscard]] bool ok() const;
    [[nodiscard]] const AxiomCheck* find(std::string_view name) const;
    [[nodiscard]] const AxiomCheck* first_failure() const;
};

// Exhaustive check of the copi axioms (commutative, partially ordered,
// zero-bounded, integral). Additive idempotence is reported but not required.
[[nodiscard]] VerificationReport verify_copi(const Semiring& s);

// Human-readable rendering, one line per check.
[[nodiscard]] std::string format_report(const Semiring& s, const VerificationReport& report);

// x <= y iff x + y = y. Throws UnsupportedDerivation when + is not idempotent.
[[nodiscard]] std::vector<bool> derive_natural_order(std::size_t n, const std::vector<Elem>& add);

// Throws SemiringRequirementError naming the witness when x <= 1 fails for some x.
void require_integral(const Semiring& s);

namespace semirings {

[[nodiscard]] SemiringRef boolean();
// {0, 1, ..., k-1, inf} with min and truncated addition.
[[nodiscard]] SemiringRef tropical(unsigned k);
// The n-element Lukasiewicz chain {0, 1/(n-1), ..., 1} with max and the t-norm.
[[nodiscard]] SemiringRef lukasiewicz(unsigned n);

// The catalogue used by exhaustive suites: BOOL, TROP1..TROP8, LUK2..LUK8.
[[nodiscard]] std::vector<SemiringRef> builtins();

// Resolves BOOL, TROPk, LUKn (case-insensitive); nullopt for unknown names.
[[nodiscard]] std::optional<SemiringRef> builtin(std::string_view name);

// Line-oriented format: semiring/elements/zero/one/add/mul/leq/order natural.
[[nodiscard]] SemiringRef parse(std::istream& in);
[[nodiscard]] SemiringRef parse_string(std::string_view text);
[[nodiscard]] SemiringRef load_file(const std::string& path);

// Builtin name or path to a semiring file.
[[nodiscard]] SemiringRef resolve(const std::string& name_or_path);

} // namespace semirings

} // namespace wkat
