#include "oracle.hpp"

#include "wkat/equiv.hpp"
#include "wkat/error.hpp"
#include "wkat/wprog.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace {

using namespace wkat;

const Alphabets ab_p{{"a", "b"}, {"p"}};

TEST(Wprog, ParseExamples) {
    const auto t6 = semirings::tropical(6);
    const Program srp = parse_program("while p do { a; choice { add 1 } or { add 2; b } }", ab_p, *t6);
    ASSERT_EQ(srp.kind(), Program::Kind::While);
    const Program body = srp.children()[0];
    ASSERT_EQ(body.kind(), Program::Kind::Seq);
    EXPECT_EQ(body.children()[0].kind(), Program::Kind::Action);
    EXPECT_EQ(body.children()[1].kind(), Program::Kind::Choice);

    EXPECT_EQ(parse_program("skip", ab_p, *t6).kind(), Program::Kind::Skip);
    const Program ite = parse_program("if p then a else b", ab_p, *t6);
    ASSERT_EQ(ite.kind(), Program::Kind::If);
    EXPECT_EQ(ite.children()[0].symbol(), 0);
    EXPECT_EQ(ite.children()[1].symbol(), 1);

    EXPECT_THROW((void)parse_program("while p do z", ab_p, *t6), ParseError);
    EXPECT_THROW((void)parse_program("add {9}", ab_p, *t6), ParseError);
}

TEST(Wprog, CompileExamples) {
    const auto t6 = semirings::tropical(6);
    EXPECT_EQ(compile_program(parse_program("while p do a", ab_p, *t6)), parse_expr("(p a)* ~p", ab_p, *t6));
    EXPECT_EQ(compile_program(parse_program("skip", ab_p, *t6)), Expr::one());
    EXPECT_EQ(compile_program(parse_program("abort", ab_p, *t6)), Expr::zero());

    const Expr srp = compile_program(parse_program("while p do { a; choice { add 1 } or { add 2; b } }", ab_p, *t6));
    const Expr paper = parse_expr("(p (a@{1} + (a@{2}) b))* ~p", ab_p, *t6);
    EXPECT_TRUE(bounded_equiv(srp, paper, ab_p, t6, 5).agrees());

    const Expr w = compile_program(parse_program("weighted { {1}: a ; {2}: b }", ab_p, *t6));
    EXPECT_EQ(w, parse_expr("a@{1} + b@{2}", ab_p, *t6));
}

TEST(Wprog, RunExamples) {
    const auto srp = ski_rental(3, 2);
    EXPECT_EQ(srp.semiring->name(), "TROP6");
    EXPECT_EQ(srp.semiring->token(ski_rental_cost(srp)), "2");
    EXPECT_EQ(run_program(Program::skip(), srp.system), Matrix::identity(4, srp.semiring));

    const auto srp25 = ski_rental(2, 5);
    EXPECT_EQ(srp25.semiring->name(), "TROP8");
    EXPECT_EQ(srp25.semiring->token(ski_rental_cost(srp25)), "2");
}

// Every rent/buy schedule: rent on days 1..k-1 and buy on day k, or rent throughout.
unsigned strategy_oracle(unsigned days, unsigned price) {
    unsigned best = days;
    for (unsigned k = 1; k <= days; ++k) best = std::min(best, (k - 1) + price);
    return best;
}

TEST(Wprog, SkiRentalMatchesStrategyEnumeration) {
    for (unsigned n = 0; n <= 5; ++n)
        for (unsigned s = 0; s <= 5; ++s) {
            const auto srp = ski_rental(n, s);
            EXPECT_EQ(srp.semiring->token(ski_rental_cost(srp)), std::to_string(strategy_oracle(n, s)))
                << n << "," << s;
        }
}

TEST(Wprog, RightUnitAndPlainChoice) {
    const auto s = semirings::tropical(4);
    GenConfig cfg;
    Generator gen(cfg, ab_p, s);
    const Program p = parse_program("if p then { a; add 1 } else { b; while p do a }", ab_p, *s);
    const Program c1 = parse_program("choice a or b", ab_p, *s);
    const Program c2 = parse_program("weighted { {0}: a ; {0}: b }", ab_p, *s);
    for (int i = 0; i < 20; ++i) {
        const TransitionSystem ts = gen.system();
        EXPECT_EQ(run_program(Program::seq(p, Program::skip()), ts), run_program(p, ts));
        EXPECT_EQ(run_program(c1, ts), run_program(c2, ts));
    }
}

// While-free programs: enumerate every resolution of choices and branches,
// multiply the weights met along the way, and sum the outcomes.
using Dist = std::vector<std::vector<Elem>>;

Dist paths(const Program& p, const TransitionSystem& ts) {
    const Semiring& s = *ts.semiring();
    const std::size_t n = ts.size();
    Dist d(n, std::vector<Elem>(n, s.zero()));
    const auto atom_of = [&](std::size_t q) {
        std::uint32_t code = 0;
        const unsigned w = static_cast<unsigned>(ts.alphabets().tests().size());
        for (Symbol t = 0; t < w; ++t)
            if (!ts.sat(t)[q]) code |= 1U << (w - 1 - t);
        return Atom(code, w);
    };
    const auto compose = [&](const Dist& x, const Dist& y) {
        Dist r(n, std::vector<Elem>(n, s.zero()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (x[i][k] != s.zero())
                    for (std::size_t j = 0; j < n; ++j) r[i][j] = s.add(r[i][j], s.mul(x[i][k], y[k][j]));
        return r;
    };
    switch (p.kind()) {
    case Program::Kind::Skip:
        for (std::size_t q = 0; q < n; ++q) d[q][q] = s.one();
        break;
    case Program::Kind::Abort: break;
    case Program::Kind::Action:
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r) d[q][r] = ts.rel(p.symbol()).at(q, r);
        break;
    case Program::Kind::Weight:
        for (std::size_t q = 0; q < n; ++q) d[q][q] = p.weight_value();
        break;
    case Program::Kind::Seq:
        d = compose(paths(p.children()[0], ts), paths(p.children()[1], ts));
        break;
    case Program::Kind::If: {
        const Dist t = paths(p.children()[0], ts), e = paths(p.children()[1], ts);
        for (std::size_t q = 0; q < n; ++q) d[q] = oracle::holds(p.guard(), atom_of(q)) ? t[q] : e[q];
        break;
    }
    case Program::Kind::Choice: {
        const Dist x = paths(p.children()[0], ts), y = paths(p.children()[1], ts);
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r) d[q][r] = s.add(x[q][r], y[q][r]);
        break;
    }
    case Program::Kind::Weighted:
        for (std::size_t i = 0; i < p.children().size(); ++i) {
            const Dist x = paths(p.children()[i], ts);
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t r = 0; r < n; ++r) d[q][r] = s.add(d[q][r], s.mul(x[q][r], p.weights()[i]));
        }
        break;
    case Program::Kind::While: ADD_FAILURE() << "while-free programs only"; break;
    }
    return d;
}

TEST(Wprog, WhileFreeProgramsMatchPathInterpreter) {
    const Alphabets al{{"a", "b"}, {"p", "q"}};
    const std::vector<std::string> programs{
        "a; b",
        "if p then a else { b; add 2 }",
        "choice { a; add 1 } or { if ~q then b else abort }",
        "weighted { {1}: a ; {2}: { b; a } ; {0}: skip }",
        "if p q then { a; if q then b else skip } else { choice add 3 or a; a }",
        "abort; a",
    };
    for (const auto& s : {semirings::tropical(4), semirings::tropical(8)}) {
        GenConfig cfg;
        cfg.density_percent = 45;
        Generator gen(cfg, al, s);
        for (const auto& text : programs) {
            const Program p = parse_program(text, al, *s);
            for (int i = 0; i < 10; ++i) {
                const TransitionSystem ts = gen.system(4);
                const Matrix m = run_program(p, ts);
                const Dist d = paths(p, ts);
                for (std::size_t q = 0; q < 4; ++q)
                    for (std::size_t r = 0; r < 4; ++r) ASSERT_EQ(m.at(q, r), d[q][r]) << text;
            }
        }
    }
}

TEST(Wprog, PrintReparses) {
    const auto s = semirings::tropical(6);
    const Program p = parse_program("while p do { a; choice { add 1 } or { add 2; b } }", ab_p, *s);
    const std::string text = print(p, ab_p, *s);
    EXPECT_EQ(compile_program(parse_program(text, ab_p, *s)), compile_program(p));
}

} // namespace
