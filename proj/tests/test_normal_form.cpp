#include "oracle.hpp"

#include "wkat/equiv.hpp"
#include "wkat/error.hpp"
#include "wkat/normal_form.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

using namespace wkat;

const Alphabets ab_p{{"a", "b"}, {"p"}};

struct Fixture {
    SemiringRef s = semirings::tropical(3);
    Normalizer n{ab_p, s};
    Atom p = enumerate_atoms(ab_p)[0];
    Atom np = enumerate_atoms(ab_p)[1];
    Expr a = Expr::action(0);
    Expr b = Expr::action(1);
    Elem w(const char* t) const { return s->element(t); }
};

TEST(NormalForm, BulletExamples) {
    Fixture f;
    const GuardedExpr gah = GuardedExpr::span(f.p, f.a, f.np, f.w("1"));
    const GuardedExpr hbg = GuardedExpr::span(f.np, f.b, f.p, f.w("1"));
    const GuardedExpr r = f.n.bullet(gah, hbg);
    ASSERT_EQ(r.form(), GuardedExpr::Form::Span);
    EXPECT_EQ(r.head(), f.p);
    EXPECT_EQ(r.tail(), f.p);
    EXPECT_EQ(f.s->token(r.weight()), "2");
    // inner is a <~p> b
    EXPECT_EQ(interp_guarded(r.to_expr(*f.s), ab_p, f.s, 3),
              interp_guarded(parse_expr("p a ~p b p @{2}", ab_p, *f.s), ab_p, f.s, 3));

    EXPECT_EQ(f.n.bullet(gah, gah).form(), GuardedExpr::Form::Zero);

    const GuardedExpr g1 = GuardedExpr::atom(f.p, f.w("1")), g2 = GuardedExpr::atom(f.p, f.w("2"));
    const GuardedExpr gg = f.n.bullet(g1, g2);
    ASSERT_EQ(gg.form(), GuardedExpr::Form::Atom);
    EXPECT_EQ(gg.head(), f.p);
    EXPECT_EQ(f.s->token(gg.weight()), "inf");
}

TEST(NormalForm, MulExamples) {
    Fixture f;
    const GuardedSum u = f.n.hat(parse_expr("p a + b@{1}", ab_p, *f.s));
    const auto canon = [&](const GuardedSum& x) { return f.n.print(x); };
    EXPECT_EQ(canon(f.n.mul(f.n.one(), u)), canon(u));
    EXPECT_EQ(canon(f.n.mul(u, f.n.one())), canon(u));
    EXPECT_TRUE(f.n.mul(u, f.n.zero()).summands.empty());

    const GuardedSum pa = f.n.mul(f.n.hat(parse_expr("p", ab_p, *f.s)), f.n.hat(f.a));
    ASSERT_EQ(pa.summands.size(), 2U);
    for (const auto& g : pa.summands) {
        EXPECT_EQ(g.form(), GuardedExpr::Form::Span);
        EXPECT_EQ(g.head(), f.p);
        EXPECT_EQ(g.weight(), f.s->one());
    }
    EXPECT_EQ(pa.summands[0].tail(), f.p);
    EXPECT_EQ(pa.summands[1].tail(), f.np);
}

TEST(NormalForm, StarBaseCases) {
    Fixture f;
    const auto txt = [&](const GuardedSum& x) { return f.n.print(x); };
    EXPECT_EQ(txt(f.n.star(f.n.zero())), txt(f.n.one()));
    EXPECT_EQ(txt(f.n.star(GuardedSum{{GuardedExpr::atom(f.p, f.w("2"))}})), txt(f.n.one()));
    const GuardedExpr gah = GuardedExpr::span(f.p, f.a, f.np, f.w("1"));
    EXPECT_EQ(txt(f.n.star(GuardedSum{{gah}})), txt(f.n.add(f.n.one(), GuardedSum{{gah}})));
}

TEST(NormalForm, HatExamples) {
    Fixture f;
    const GuardedSum hp = f.n.hat(parse_expr("p", ab_p, *f.s));
    ASSERT_EQ(hp.summands.size(), 1U);
    EXPECT_EQ(hp.summands[0].form(), GuardedExpr::Form::Atom);
    EXPECT_EQ(hp.summands[0].head(), f.p);

    const GuardedSum hnp = f.n.hat(parse_expr("~p", ab_p, *f.s));
    ASSERT_EQ(hnp.summands.size(), 1U);
    EXPECT_EQ(hnp.summands[0].head(), f.np);

    const GuardedSum ha = f.n.hat(f.a);
    ASSERT_EQ(ha.summands.size(), 4U);
    for (const auto& g : ha.summands) {
        EXPECT_EQ(g.form(), GuardedExpr::Form::Span);
        EXPECT_EQ(g.inner(), f.a);
        EXPECT_EQ(g.weight(), f.s->one());
    }
    EXPECT_EQ(f.n.print(ha), "p a p + p a ~p + ~p a p + ~p a ~p");
}

TEST(NormalForm, ScalarMultipliesOnTheRight) {
    Fixture f;
    const GuardedSum u = f.n.scalar(f.n.hat(f.a), f.w("2"));
    for (const auto& g : u.summands) EXPECT_EQ(f.s->token(g.weight()), "2");
    EXPECT_TRUE(f.n.scalar(u, f.s->zero()).summands.empty());
}

// Canonical sums: no zeros, sorted, one atom per atom and one span per (head, tail).
void expect_canonical(const GuardedSum& u, const Semiring& s) {
    for (std::size_t i = 0; i < u.summands.size(); ++i) {
        const auto& g = u.summands[i];
        ASSERT_NE(g.form(), GuardedExpr::Form::Zero);
        ASSERT_NE(g.weight(), s.zero());
        if (i == 0) continue;
        const auto& prev = u.summands[i - 1];
        const auto key = [](const GuardedExpr& x) {
            return std::tuple{x.head(), x.form() == GuardedExpr::Form::Span, x.form() == GuardedExpr::Form::Span ? x.tail() : x.head()};
        };
        ASSERT_LT(key(prev), key(g));
    }
}

TEST(NormalForm, SoundAndProperOnRandomExpressions) {
    const Alphabets al{{"a", "b"}, {"p", "q"}};
    for (const auto& s : {semirings::boolean(), semirings::tropical(3), semirings::lukasiewicz(3)}) {
        const Normalizer n(al, s);
        GenConfig cfg;
        cfg.max_depth = 3;
        Generator gen(cfg, al, s);
        const auto strings = oracle::guarded_strings(al, 3);
        for (int i = 0; i < 40; ++i) {
            const Expr e = gen.expr();
            const GuardedSum u = n.hat(e);
            expect_canonical(u, *s);
            const Expr he = n.to_expr(u);
            for (const auto& [atoms, acts] : strings) {
                oracle::Guarded oe(*s, atoms, acts), oh(*s, atoms, acts);
                ASSERT_EQ(oe.coef(e), oh.coef(he)) << print(e, al, *s);
                if (atoms.size() > 2) continue;
                // the same string spelled over Sigma u Lambda
                Word spelled = spell(GuardedString(atoms, acts), al);
                oracle::Free of(*s, al.actions().size(), spelled);
                ASSERT_EQ(of.coef(he), oh.coef(he)) << print(e, al, *s);
            }
            // every free word in the support spells a guarded string
            std::set<Word> spellings;
            for (const auto& [atoms, acts] : strings) spellings.insert(spell(GuardedString(atoms, acts), al));
            for (const auto& [w, c] : interp_free(he, al, s, 5).coefficients())
                ASSERT_TRUE(spellings.count(w)) << print(e, al, *s);
        }
    }
}

TEST(NormalForm, SpellLayout) {
    const Alphabets al{{"a", "b"}, {"p", "q"}};
    const auto atoms = enumerate_atoms(al);
    const Word w = spell(GuardedString({atoms[1], atoms[2]}, {1}), al);
    // p ~q b ~p q
    EXPECT_EQ(w, (Word{2, 5, 1, 3, 4}));
}

TEST(NormalForm, RefusesNonIntegralSemiring) {
    std::vector<Elem> add{0, 1, 2, 1, 2, 2, 2, 2, 2};
    std::vector<Elem> mul{0, 0, 0, 0, 1, 2, 0, 2, 2};
    std::vector<bool> leq{true, true, true, false, true, true, false, false, true};
    const auto s = std::make_shared<const Semiring>("SAT3", std::vector<std::string>{"0", "1", "many"}, add, mul, 0,
                                                    1, leq);
    try {
        (void)normalize(Expr::action(0), ab_p, s);
        FAIL() << "expected refusal";
    } catch (const SemiringRequirementError& e) {
        EXPECT_NE(std::string(e.what()).find("many"), std::string::npos) << e.what();
    }
}

TEST(NormalForm, PrintRefusesHugeTrees) {
    const Alphabets al{{"a", "b"}, {"p", "q"}};
    const auto s = semirings::boolean();
    const Normalizer n(al, s);
    const GuardedSum u = n.hat(parse_expr("((a b)* a (b + a)*)*", al, *s));
    EXPECT_THROW((void)n.print(u, 50), ResourceError);
}

TEST(NormalForm, EmptyTestAlphabet) {
    const Alphabets al{{"a", "b"}, {}};
    const auto s = semirings::tropical(3);
    const Expr e = parse_expr("(a b@{1})* a", al, *s);
    const Expr h = normalize(e, al, s);
    EXPECT_EQ(interp_guarded(e, al, s, 5), interp_guarded(h, al, s, 5));
}

} // namespace
