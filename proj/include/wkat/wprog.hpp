#pragma once

#include "wkat/relational.hpp"
#include "wkat/semiring.hpp"
#include "wkat/syntax.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace wkat {

class Program {
public:
    enum class Kind : std::uint8_t { Skip, Abort, Action, Weight, Seq, If, While, Choice, Weighted };

    static Program skip();
    static Program abort();
    static Program action(Symbol a);
    static Program weight(Elem s);
    static Program seq(Program p, Program q);
    static Program if_then_else(TestExpr b, Program p, Program q);
    static Program while_do(TestExpr b, Program p);
    static Program choice(Program p, Program q);
    static Program weighted(std::vector<std::pair<Elem, Program>> branches);

    [[nodiscard]] Kind kind() const noexcept { return node_->kind; }
    [[nodiscard]] Symbol symbol() const noexcept { return node_->symbol; }
    [[nodiscard]] Elem weight_value() const noexcept { return node_->weight; }
    [[nodiscard]] const TestExpr& guard() const { return *node_->guard; }
    // Seq/If/Choice: two children; While: one; Weighted: one per branch.
    [[nodiscard]] const std::vector<Program>& children() const noexcept { return node_->children; }
    [[nodiscard]] const std::vector<Elem>& weights() const noexcept { return node_->weights; }

private:
    struct Node {
        Kind kind;
        Symbol symbol = 0;
        Elem weight = 0;
        std::optional<TestExpr> guard;
        std::vector<Program> children;
        std::vector<Elem> weights;
    };
    explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Statements separated by `;`. Statements: skip, abort, ACTION, add {s},
// if TEST then BLOCK else BLOCK, while TEST do BLOCK, choice BLOCK or BLOCK,
// weighted { {s}: BLOCK ; ... }. BLOCK is `{ ... }` or a single statement.
// Weights may be written with or without braces.
[[nodiscard]] Program parse_program(std::string_view text, const Alphabets& alphabets, const Semiring& semiring);
[[nodiscard]] Program load_program(const std::string& path, const Alphabets& alphabets, const Semiring& semiring);

// skip -> 1, abort -> 0, add s -> 1@{s}, if -> b e + ~b f, while -> (b e)* ~b,
// choice -> +, weighted -> sum of e_i@{s_i}.
[[nodiscard]] Expr compile_program(const Program& p);

[[nodiscard]] Matrix run_program(const Program& p, const TransitionSystem& ts);

[[nodiscard]] std::string print(const Program& p, const Alphabets& alphabets, const Semiring& semiring);

// Ski rental over `days` days with buy price `price`: states 0..days, `a`
// moves k -> k-1, `b` jumps to 0, `p` holds on 1..days, semiring
// TROP(days + price + 1), at least TROP2 so that the daily rent 1 exists.
struct SkiRental {
    Alphabets alphabets;
    SemiringRef semiring;
    std::string program_text;
    Program program;
    TransitionSystem system;
};

[[nodiscard]] SkiRental ski_rental(unsigned days, unsigned price);
// Cost of the best strategy on the (days, 0) entry of the run.
[[nodiscard]] Elem ski_rental_cost(const SkiRental& srp);

} // namespace wkat
