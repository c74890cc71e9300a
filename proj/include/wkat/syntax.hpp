#pragma once

#include "wkat/semiring.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wkat {

// Index of an action or test letter inside its alphabet.
using Symbol = std::uint16_t;

// Action letters (Sigma) and test letters (Phi), finite and disjoint. The
// order of the test letters fixes the bit order of atoms.
class Alphabets {
public:
    static constexpr std::size_t max_actions = 64;
    static constexpr std::size_t max_tests = 16;

    Alphabets() = default;
    Alphabets(std::vector<std::string> actions, std::vector<std::string> tests);

    [[nodiscard]] const std::vector<std::string>& actions() const noexcept { return actions_; }
    [[nodiscard]] const std::vector<std::string>& tests() const noexcept { return tests_; }
    [[nodiscard]] std::optional<Symbol> action(std::string_view name) const;
    [[nodiscard]] std::optional<Symbol> test(std::string_view name) const;

    friend bool operator==(const Alphabets&, const Alphabets&) = default;

private:
    std::vector<std::string> actions_;
    std::vector<std::string> tests_;
};

// Boolean tests over Phi: p | ~b | b + c | b c | 0 | 1.
class TestExpr {
public:
    enum class Kind : std::uint8_t { Letter, Not, Or, And, Zero, One };

    static TestExpr letter(Symbol p);
    static TestExpr negate(TestExpr b);
    static TestExpr disj(TestExpr b, TestExpr c);
    static TestExpr conj(TestExpr b, TestExpr c);
    static TestExpr zero();
    static TestExpr one();

    [[nodiscard]] Kind kind() const noexcept { return node_->kind; }
    [[nodiscard]] Symbol symbol() const noexcept { return node_->symbol; }
    [[nodiscard]] TestExpr left() const { return TestExpr(node_->left); }
    [[nodiscard]] TestExpr right() const { return TestExpr(node_->right); }
    // Operand of a complement.
    [[nodiscard]] TestExpr operand() const { return TestExpr(node_->left); }

    // Complements sit on letters only.
    [[nodiscard]] bool in_bnf() const;

    friend bool operator==(const TestExpr& a, const TestExpr& b);

private:
    struct Node {
        Kind kind;
        Symbol symbol = 0;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
    };
    explicit TestExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// (Sigma, Phi, S)-expressions: a | b | e@{s} | e + f | e f | e*.
//
// Values are immutable handles onto shared nodes, so normal forms may share
// subterms freely; id() identifies a node for memoised evaluation.
//
// sum() and product() fold two tests into a single test node, so an Expr never
// holds Sum/Product of two tests. This keeps the printed form canonical.
class Expr {
public:
    enum class Kind : std::uint8_t { Action, Test, Scalar, Sum, Product, Star };

    static Expr action(Symbol a);
    static Expr test(TestExpr b);
    static Expr scalar(Expr e, Elem s);
    static Expr sum(Expr e, Expr f);
    static Expr product(Expr e, Expr f);
    static Expr star(Expr e);
    static Expr zero();
    static Expr one();

    [[nodiscard]] Kind kind() const noexcept { return node_->kind; }
    [[nodiscard]] Symbol symbol() const noexcept { return node_->symbol; }
    [[nodiscard]] Elem weight() const noexcept { return node_->weight; }
    [[nodiscard]] const TestExpr& test_expr() const { return *node_->test; }
    [[nodiscard]] Expr left() const { return Expr(node_->left); }
    [[nodiscard]] Expr right() const { return Expr(node_->right); }
    // Operand of a star or scalar node.
    [[nodiscard]] Expr operand() const { return Expr(node_->left); }

    [[nodiscard]] const void* id() const noexcept { return node_.get(); }
    // Number of distinct nodes reachable from this one.
    [[nodiscard]] std::size_t dag_size() const;
    [[nodiscard]] std::size_t depth() const noexcept { return node_->depth; }
    [[nodiscard]] bool is_test() const noexcept { return kind() == Kind::Test; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node {
        Kind kind;
        Symbol symbol = 0;
        Elem weight = 0;
        std::size_t depth = 1;
        std::optional<TestExpr> test;
        std::shared_ptr<const Node> left;
        std::shared_ptr<const Node> right;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Complete assignment of truth values to Phi. Atoms are numbered in
// lexicographic order of literal strings with p before ~p, so code bit
// (n-1-i) is set exactly when p_i is false.
class Atom {
public:
    Atom() = default;
    Atom(std::uint32_t code, unsigned width);

    [[nodiscard]] std::uint32_t code() const noexcept { return code_; }
    [[nodiscard]] unsigned width() const noexcept { return width_; }
    [[nodiscard]] bool holds(Symbol p) const noexcept { return ((code_ >> (width_ - 1 - p)) & 1U) == 0; }

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;

private:
    std::uint32_t code_ = 0;
    unsigned width_ = 0;
};

inline constexpr std::size_t default_atom_limit = 4;

// All 2^|Phi| atoms in lexicographic order; Phi = {} gives the single empty atom.
[[nodiscard]] std::vector<Atom> enumerate_atoms(const Alphabets& alphabets, std::size_t limit = default_atom_limit);
[[nodiscard]] std::size_t atom_count(const Alphabets& alphabets, std::size_t limit = default_atom_limit);

[[nodiscard]] bool atom_satisfies(const Atom& atom, const TestExpr& b);

// De Morgan, double negation, ~0 = 1 and ~1 = 0 until complements sit on letters.
[[nodiscard]] TestExpr to_bnf(const TestExpr& b);
[[nodiscard]] Expr to_bnf(const Expr& e);

// The test expression p_1^+- p_2^+- ... describing `atom` (1 when Phi is empty).
[[nodiscard]] TestExpr atom_test(const Atom& atom);

// Canonical printers. The output re-parses to an equal AST.
[[nodiscard]] std::string print(const TestExpr& b, const Alphabets& alphabets);
[[nodiscard]] std::string print(const Expr& e, const Alphabets& alphabets, const Semiring& semiring);
// "<p,~q>"; "<>" for the empty atom.
[[nodiscard]] std::string print(const Atom& atom, const Alphabets& alphabets);

// Printing with shared subterms: every node reached more than once whose tree
// has more than `min_size` nodes is bound to a name $k, innermost first.
struct SharedPrint {
    std::vector<std::string> roots;
    std::vector<std::pair<std::string, std::string>> bindings;
};
[[nodiscard]] SharedPrint print_shared(const std::vector<Expr>& roots, const Alphabets& alphabets,
                                       const Semiring& semiring, std::size_t min_size = 8);

// Grammar:
//   expr := sum ; sum := seq { "+" seq } ; seq := post { [";"] post } ;
//   post := prim { "*" | "@" "{" TOKEN "}" } ;
//   prim := ACTION | TEST | "~" prim | "0" | "1" | "(" expr ")"
// An identifier that is not a symbol but spells a run of one-character
// symbols ("ab") is read as their product.
[[nodiscard]] Expr parse_expr(std::string_view text, const Alphabets& alphabets, const Semiring& semiring);

// The test denoted by e when e is built from tests only; nullopt otherwise.
[[nodiscard]] std::optional<TestExpr> as_test(const Expr& e);

} // namespace wkat
