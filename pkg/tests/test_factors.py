import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import lassos, pnf_formulas, symbols
from ltlfactors.factors import (BOTTOM, TRUE_MONOMIAL, LinearFactor, Literal,
                                lf, monomial, monomial_sat,
                                smart_and, simp, sorted_factors, theta_lf,
                                theta_monomial)
from ltlfactors.semantics import eval_lasso
from ltlfactors.syntax import (FF, TOP, TT, Conj, Eventually, Next, Not,
                               Until, big_or, parse, show)


def factors(text):
    return [str(x) for x in sorted_factors(lf(parse(text)))]


class TestMonomials:
    def test_theta(self):
        assert theta_monomial(BOTTOM) == FF
        assert theta_monomial(TRUE_MONOMIAL) == TT
        assert show(theta_monomial(monomial("!q", "p"))) == "p & !q"

    def test_smart_and(self):
        assert smart_and(monomial("p"), monomial("!p")) is BOTTOM
        assert smart_and(monomial("p"), monomial("q")) == monomial("p", "q")
        assert smart_and(monomial("!p"), monomial("q")) == monomial("!p", "q")
        assert smart_and(BOTTOM, TRUE_MONOMIAL) is BOTTOM

    def test_sat(self):
        assert monomial_sat(frozenset({"p"}), monomial("p"))
        assert monomial_sat(frozenset(), monomial("!p"))
        assert not monomial_sat(frozenset({"p", "q"}), monomial("p", "!q"))
        assert not monomial_sat(frozenset(), BOTTOM)

    def test_contradictory_monomial_rejected(self):
        with pytest.raises(ValueError):
            monomial("p", "!p")

    def test_canonical(self):
        assert monomial("q", "p", "q") == monomial("p", "q")
        assert str(TRUE_MONOMIAL) == "tt"

    def test_literal_negation_involution(self):
        assert ~~Literal("p") == Literal("p")

    @given(st.lists(st.sampled_from(["p", "!p", "q", "!q"]), max_size=2),
           st.lists(st.sampled_from(["p", "!p", "q", "!q"]), max_size=2), symbols)
    def test_smart_and_sound(self, a, b, x):
        ma, mb = smart_and(monomial(*a[:1]), monomial(*a[1:])), smart_and(monomial(*b[:1]), monomial(*b[1:]))
        assert monomial_sat(x, smart_and(ma, mb)) == (monomial_sat(x, ma) and monomial_sat(x, mb))


class TestSimp:
    def test_temporal(self):
        assert simp(parse("F p")) == {Conj.of([parse("F p")])}

    def test_distribution(self):
        got = simp(parse("(X a | X b) & X c"))
        assert got == {Conj.of(map(parse, ["X a", "X c"])), Conj.of(map(parse, ["X b", "X c"]))}

    def test_disjunction(self):
        assert simp(parse("p | q")) == {Conj.of([parse("p")]), Conj.of([parse("q")])}

    @given(pnf_formulas, lassos)
    def test_sound(self, f, w):
        assert eval_lasso(big_or(c.formula() for c in simp(f)), w) == eval_lasso(f, w)


class TestLinearFactors:
    def test_eventually(self):
        assert factors("F p") == ["<p | tt>", "<tt | F p>"]

    def test_always_eventually(self):
        assert factors("G F p") == ["<p | G F p>", "<tt | F p & G F p>"]

    def test_until(self):
        assert factors("q U p") == ["<p | tt>", "<q | q U p>"]

    def test_conjunction_example(self):
        assert factors("!p & X !p & (q U p)") == ["<!p & q | !p & q U p>"]

    def test_ff(self):
        assert lf(FF) == frozenset()

    def test_tt(self):
        assert factors("tt") == ["<tt | tt>"]

    def test_release(self):
        assert factors("p R q") == ["<p & q | tt>", "<q | p R q>"]

    def test_next_distributes_through_simp(self):
        assert factors("X (p | q & r)") == ["<tt | p>", "<tt | q & r>"]

    def test_theta_examples(self):
        assert theta_lf([]) == FF
        assert show(theta_lf([LinearFactor(monomial("p"), TOP)])) == "p & X tt"
        assert show(theta_lf(lf(parse("G F p")))) == "p & X G F p | tt & X (F p & G F p)"

    def test_json_record(self):
        x = sorted_factors(lf(parse("G F p")))[1]
        assert x.to_json() == {"monomial": [], "next": ["F p", "G F p"]}

    @given(pnf_formulas, lassos)
    def test_expansion(self, f, w):
        assert eval_lasso(theta_lf(lf(f)), w) == eval_lasso(f, w)

    @given(pnf_formulas)
    def test_factors_well_formed(self, f):
        for x in lf(f):
            assert x.monomial is not BOTTOM
            assert x.next == Conj.of(x.next.elems)

    @given(pnf_formulas)
    def test_eventually_shortcut_matches_until(self, f):
        via_until = lf(Until(TT, f))
        shortcut = lf(Eventually(f))
        rename = {Conj.of([Until(TT, f)]): Conj.of([Eventually(f)])}
        assert {LinearFactor(x.monomial, rename.get(x.next, x.next)) for x in via_until} == shortcut

    def test_unknown_formula_rejected(self):
        with pytest.raises(TypeError):
            lf(Not(Next(parse("p"))))


