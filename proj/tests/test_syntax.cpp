#include "oracle.hpp"

#include "wkat/equiv.hpp"
#include "wkat/error.hpp"
#include "wkat/syntax.hpp"

#include <gtest/gtest.h>

namespace {

using namespace wkat;

const Alphabets ab_p{{"a", "b"}, {"p"}};
const Alphabets abc_pq{{"a", "b", "c"}, {"p", "q"}};

TEST(Syntax, SrpExpressionParses) {
    const auto t6 = semirings::tropical(6);
    const Expr e = parse_expr("(p (a@{1} + (a@{2}) b))* ~p", ab_p, *t6);
    ASSERT_EQ(e.kind(), Expr::Kind::Product);
    const Expr loop = e.left();
    ASSERT_EQ(loop.kind(), Expr::Kind::Star);
    ASSERT_EQ(e.right().kind(), Expr::Kind::Test);
    EXPECT_EQ(e.right().test_expr().kind(), TestExpr::Kind::Not);
    const Expr body = loop.operand();
    ASSERT_EQ(body.kind(), Expr::Kind::Product);
    EXPECT_EQ(body.left().kind(), Expr::Kind::Test);
    const Expr choice = body.right();
    ASSERT_EQ(choice.kind(), Expr::Kind::Sum);
    ASSERT_EQ(choice.left().kind(), Expr::Kind::Scalar);
    EXPECT_EQ(t6->token(choice.left().weight()), "1");
    ASSERT_EQ(choice.right().kind(), Expr::Kind::Product);
    ASSERT_EQ(choice.right().left().kind(), Expr::Kind::Scalar);
    EXPECT_EQ(t6->token(choice.right().left().weight()), "2");
    EXPECT_EQ(choice.right().right().kind(), Expr::Kind::Action);
    EXPECT_EQ(choice.right().right().symbol(), *ab_p.action("b"));
}

TEST(Syntax, UnitAndErrors) {
    const auto t3 = semirings::tropical(3);
    EXPECT_EQ(parse_expr("1", ab_p, *t3), Expr::one());
    EXPECT_EQ(parse_expr("0", ab_p, *t3), Expr::zero());
    EXPECT_THROW((void)parse_expr("a @ {7}", ab_p, *t3), ParseError);
    EXPECT_THROW((void)parse_expr("(a b", ab_p, *t3), ParseError);
    EXPECT_THROW((void)parse_expr("a z", ab_p, *t3), ParseError);
    try {
        (void)parse_expr("a + (b", ab_p, *t3);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_GE(e.position(), 4U);
    }
}

TEST(Syntax, SemicolonAndJuxtapositionAgree) {
    const auto b = semirings::boolean();
    EXPECT_EQ(parse_expr("a; b", ab_p, *b), parse_expr("a b", ab_p, *b));
    EXPECT_EQ(parse_expr("a b*", ab_p, *b), Expr::product(Expr::action(0), Expr::star(Expr::action(1))));
    EXPECT_EQ(parse_expr("a + b a", ab_p, *b),
              Expr::sum(Expr::action(0), Expr::product(Expr::action(1), Expr::action(0))));
}

TEST(Syntax, BnfExamples) {
    const TestExpr p = TestExpr::letter(0), q = TestExpr::letter(1);
    EXPECT_EQ(to_bnf(TestExpr::negate(TestExpr::disj(p, q))), TestExpr::conj(TestExpr::negate(p), TestExpr::negate(q)));
    EXPECT_EQ(to_bnf(TestExpr::negate(TestExpr::negate(p))), p);
    EXPECT_EQ(to_bnf(TestExpr::negate(TestExpr::zero())), TestExpr::one());
    EXPECT_EQ(to_bnf(TestExpr::negate(TestExpr::one())), TestExpr::zero());
}

TEST(Syntax, AtomsInLexicographicOrder) {
    const auto b = semirings::boolean();
    const Alphabets one{{"a"}, {"p"}};
    const auto a1 = enumerate_atoms(one);
    ASSERT_EQ(a1.size(), 2U);
    EXPECT_EQ(print(a1[0], one), "<p>");
    EXPECT_EQ(print(a1[1], one), "<~p>");

    const auto a2 = enumerate_atoms(abc_pq);
    std::vector<std::string> names;
    for (const auto& g : a2) names.push_back(print(g, abc_pq));
    EXPECT_EQ(names, (std::vector<std::string>{"<p,q>", "<p,~q>", "<~p,q>", "<~p,~q>"}));

    const Alphabets none{{"a"}, {}};
    const auto a0 = enumerate_atoms(none);
    ASSERT_EQ(a0.size(), 1U);
    EXPECT_EQ(print(a0[0], none), "<>");

    const Alphabets five{{"a"}, {"p", "q", "r", "s", "t"}};
    EXPECT_THROW((void)enumerate_atoms(five), ResourceError);
}

TEST(Syntax, AtomSatisfiesExamples) {
    const Atom g = enumerate_atoms(abc_pq)[1]; // p ~q
    const TestExpr p = TestExpr::letter(0), q = TestExpr::letter(1);
    EXPECT_TRUE(atom_satisfies(g, p));
    EXPECT_FALSE(atom_satisfies(g, q));
    EXPECT_TRUE(atom_satisfies(g, TestExpr::negate(TestExpr::conj(p, q))));
}

TEST(Syntax, BnfPreservesTruthAndComplementFlips) {
    const auto b = semirings::boolean();
    Generator gen(GenConfig{}, abc_pq, b);
    for (int i = 0; i < 300; ++i) {
        const TestExpr t = gen.test(4);
        const TestExpr n = to_bnf(t);
        EXPECT_TRUE(n.in_bnf());
        for (const Atom& g : enumerate_atoms(abc_pq)) {
            EXPECT_EQ(atom_satisfies(g, n), oracle::holds(t, g));
            EXPECT_NE(atom_satisfies(g, t), atom_satisfies(g, TestExpr::negate(t)));
        }
    }
}

TEST(Syntax, PrintParseRoundTrip) {
    for (const auto& s : {semirings::boolean(), semirings::tropical(3), semirings::lukasiewicz(3)}) {
        GenConfig cfg;
        cfg.max_depth = 5;
        Generator gen(cfg, abc_pq, s);
        for (int i = 0; i < 300; ++i) {
            const Expr e = gen.expr();
            const std::string text = print(e, abc_pq, *s);
            EXPECT_EQ(parse_expr(text, abc_pq, *s), e) << text;
            EXPECT_EQ(print(parse_expr(text, abc_pq, *s), abc_pq, *s), text);
        }
    }
}

TEST(Syntax, SharedPrintBindsRepeatedSubterms) {
    const auto b = semirings::boolean();
    const Expr big = parse_expr("(a b + b a)* (a + b)* (p a)*", ab_p, *b);
    const Expr e = Expr::sum(Expr::product(big, Expr::action(0)), Expr::product(Expr::action(1), big));
    const SharedPrint sp = print_shared({e}, ab_p, *b, 4);
    ASSERT_EQ(sp.roots.size(), 1U);
    ASSERT_FALSE(sp.bindings.empty());
    EXPECT_NE(sp.roots[0].find('$'), std::string::npos);
}

TEST(Syntax, AsTest) {
    const auto b = semirings::boolean();
    EXPECT_TRUE(as_test(parse_expr("p + ~p", ab_p, *b)).has_value());
    EXPECT_FALSE(as_test(parse_expr("p a", ab_p, *b)).has_value());
}

} // namespace
