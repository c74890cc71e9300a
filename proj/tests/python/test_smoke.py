import pytest

import wkat

SRP_SYSTEM = """semiring TROP6
states 0 1 2 3
rel a 1 0 0
rel a 2 1 0
rel a 3 2 0
rel b 0 0 0
rel b 1 0 0
rel b 2 0 0
rel b 3 0 0
sat p 1 2 3
"""


def test_builtins_are_copi():
    names = [s.name for s in wkat.builtins()]
    assert len(names) == 16
    assert "TROP3" in names
    assert all(wkat.is_copi(s) for s in wkat.builtins())


def test_semiring_operations():
    t3 = wkat.semiring("TROP3")
    assert t3.elements == ["0", "1", "2", "inf"]
    assert t3.zero == "inf" and t3.one == "0"
    assert t3.mul("1", "2") == "inf"
    assert t3.add("1", "2") == "1"
    assert wkat.scalar_star(t3, "1") == "0"


def test_bad_order_is_reported():
    bad = wkat.parse_semiring(
        "semiring BADBOOL\nelements 0 1\nzero 0\none 1\n"
        "add 0 0 0\nadd 0 1 1\nadd 1 0 1\nadd 1 1 1\n"
        "mul 0 0 0\nmul 0 1 0\nmul 1 0 0\nmul 1 1 1\n"
        "leq 1 0\nleq 0 0\nleq 1 1\n"
    )
    assert not wkat.is_copi(bad)
    failed = [c for c in wkat.verify_copi(bad) if not c["passed"]]
    assert any(c["name"] == "zero-bounded" and c["witness"] == ["1"] for c in failed)


def test_parse_and_print():
    e = wkat.parse("(a b)* a", actions=["a", "b"], tests=["p"])
    assert str(e) == str(wkat.parse(str(e), actions=["a", "b"], tests=["p"]))
    with pytest.raises(wkat.ParseError):
        wkat.parse("(a", actions=["a"], tests=["p"])


def test_interp_golden():
    e = wkat.parse("p a", actions=["a"], tests=["p"])
    assert wkat.interp(e, bound=2) == [("<p> a <p>", "1"), ("<p> a <~p>", "1")]


def test_normalize_golden():
    e = wkat.parse("a", actions=["a"], tests=["p"])
    assert str(wkat.normalize(e)) == "p a p + p a ~p + ~p a p + ~p a ~p"


def test_equiv():
    al = dict(actions=["a", "b"], tests=["p"])
    agrees, text = wkat.equiv(wkat.parse("(a b)* a", **al), wkat.parse("a (b a)*", **al), bound=4)
    assert agrees and text == "AgreeUpTo(4)"
    t3 = dict(al, semiring="TROP3")
    agrees, text = wkat.equiv(wkat.parse("a", **t3), wkat.parse("a@{2}", **t3), bound=4)
    assert not agrees
    assert text == "Distinguisher <p> a <p>: 0 vs 2"


def test_eval_and_run():
    al = dict(actions=["a", "b"], tests=["p"])
    e = wkat.parse("p", semiring="TROP6", **al)
    assert len(wkat.eval(SRP_SYSTEM, e)) == 3
    prog = "while p do { a; choice { add 1 } or { add 2; b } }"
    entries = wkat.run_program(prog, SRP_SYSTEM, semiring="TROP6", **al)
    assert ("3", "0", "2") in entries


def test_ski_rental():
    assert wkat.ski_rental(3, 2) == 2
    assert wkat.ski_rental(2, 5) == 2


def test_cayley_and_selftest():
    e = wkat.parse("(p a)* ~p", actions=["a"], tests=["p"])
    assert wkat.cayley_check(e, bound=3)
    assert wkat.selftest(seed=7, samples=3)


def test_cli():
    code, out, _ = wkat.cli(["srp", "--days", "3", "--price", "2"])
    assert code == 0 and "optimal cost 2" in out
    assert wkat.cli(["frobnicate"])[0] == 2


def test_refuses_non_integral():
    sat = wkat.parse_semiring(
        "semiring SAT3\nelements 0 1 many\nzero 0\none 1\n"
        "add 0 0 0\nadd 0 1 1\nadd 0 many many\n"
        "add 1 0 1\nadd 1 1 many\nadd 1 many many\n"
        "add many 0 many\nadd many 1 many\nadd many many many\n"
        "mul 0 0 0\nmul 0 1 0\nmul 0 many 0\n"
        "mul 1 0 0\nmul 1 1 1\nmul 1 many many\n"
        "mul many 0 0\nmul many 1 many\nmul many many many\n"
        "leq 0 0\nleq 0 1\nleq 0 many\nleq 1 1\nleq 1 many\nleq many many\n"
    )
    assert not wkat.is_copi(sat)
    assert issubclass(wkat.SemiringRequirementError, wkat.WkatError)
