#pragma once

#include "wkat/semiring.hpp"
#include "wkat/syntax.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wkat {

// One of 0@{1}, G@{s} or G e H@{s}. For the span form `inner` is the
// expression strictly between the two atoms, so body() = inner H.
class GuardedExpr {
public:
    enum class Form : std::uint8_t { Zero, Atom, Span };

    static GuardedExpr zero(Elem one);
    static GuardedExpr atom(Atom g, Elem s);
    static GuardedExpr span(Atom g, Expr inner, Atom h, Elem s);

    [[nodiscard]] Form form() const noexcept { return form_; }
    // Atom and span forms only.
    [[nodiscard]] Atom head() const;
    [[nodiscard]] Atom tail() const;
    [[nodiscard]] const Expr& inner() const;
    // inner H for spans; nullopt (the empty word) for atoms.
    [[nodiscard]] std::optional<Expr> body() const;
    [[nodiscard]] Elem weight() const noexcept { return weight_; }

    // The guarded expression as an ordinary expression.
    [[nodiscard]] Expr to_expr(const Semiring& s) const;

private:
    GuardedExpr(Form f, Atom g, Atom h, std::optional<Expr> inner, Elem s)
        : form_(f), head_(g), tail_(h), inner_(std::move(inner)), weight_(s) {}

    Form form_;
    Atom head_;
    Atom tail_;
    std::optional<Expr> inner_;
    Elem weight_;
};

// A finite sum of guarded expressions; the empty sum denotes 0@{1}.
//
// Sums built by Normalizer are canonical: no zero forms or zero weights, at
// most one atom form per atom and one span form per (head, tail) pair, sorted
// by (head, atom-before-span, tail). Spans with the same ends but different
// bodies merge into G (x@{s} + y@{t}) H@{1}.
struct GuardedSum {
    std::vector<GuardedExpr> summands;
};

// Guarded-sum algebra over fixed alphabets and semiring. Construction
// refuses non-integral semirings: the (G@{s})-star base case is only sound
// for s <= 1.
class Normalizer {
public:
    Normalizer(Alphabets alphabets, SemiringRef semiring);

    [[nodiscard]] const Alphabets& alphabets() const noexcept { return alphabets_; }
    [[nodiscard]] const SemiringRef& semiring() const noexcept { return semiring_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }

    [[nodiscard]] GuardedExpr bullet(const GuardedExpr& e, const GuardedExpr& f) const;

    [[nodiscard]] GuardedSum one() const;
    [[nodiscard]] GuardedSum zero() const;
    [[nodiscard]] GuardedSum add(const GuardedSum& u, const GuardedSum& v) const;
    [[nodiscard]] GuardedSum mul(const GuardedSum& u, const GuardedSum& v) const;
    [[nodiscard]] GuardedSum scalar(const GuardedSum& u, Elem t) const;
    [[nodiscard]] GuardedSum star(const GuardedSum& u) const;

    // Normal form of an expression (tests are put in Boolean normal form first).
    [[nodiscard]] GuardedSum hat(const Expr& e) const;

    [[nodiscard]] GuardedSum canonicalize(const std::vector<GuardedExpr>& summands) const;

    [[nodiscard]] Expr to_expr(const GuardedSum& u) const;
    // Summands joined by " + " in canonical order. Throws ResourceError when
    // the printed tree would exceed `max_nodes` nodes.
    [[nodiscard]] std::string print(const GuardedSum& u, std::size_t max_nodes = 200'000) const;

private:
    [[nodiscard]] Expr atom_expr(const Atom& g) const;
    [[nodiscard]] GuardedSum star_single(const GuardedExpr& g) const;
    [[nodiscard]] GuardedSum star_prefix(const std::vector<GuardedExpr>& g, std::size_t n) const;
    [[nodiscard]] GuardedSum hat_test(const TestExpr& b) const;

    Alphabets alphabets_;
    SemiringRef semiring_;
    std::vector<Atom> atoms_;
    std::vector<Expr> atom_exprs_;
};

// Free-function spellings of the guarded-sum operations.
[[nodiscard]] GuardedSum hat(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring);
[[nodiscard]] Expr normalize(const Expr& e, const Alphabets& alphabets, const SemiringRef& semiring);

// Number of nodes the expression has when printed as a tree, saturating at cap.
[[nodiscard]] std::size_t tree_size(const Expr& e, std::size_t cap);

} // namespace wkat
