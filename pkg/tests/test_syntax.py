import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import formulas, lassos, pnf_formulas
from ltlfactors.semantics import eval_lasso
from ltlfactors.syntax import (FF, TOP, TT, Always, And, Atom, Conj, Eventually,
                               Next, Not, Or, ParseError, Release, Until,
                               compare, conj, is_pnf, is_temporal, parse, show,
                               size, sort_key, subformulae, to_pnf)

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestParse:
    def test_nested_unary(self):
        assert parse("G F p") == Always(Eventually(p))

    def test_until_binds_tighter_than_and(self):
        assert parse("p U q & r") == And(Until(p, q), r)

    def test_incomplete_input(self):
        with pytest.raises(ParseError) as e:
            parse("p U")
        assert (e.value.line, e.value.column) == (1, 4)
        assert "identifier" in e.value.expected

    def test_until_is_right_associative(self):
        assert parse("p U q U r") == Until(p, Until(q, r))

    def test_and_is_left_associative(self):
        assert parse("p & q & r") == And(And(p, q), r)

    def test_or_weakest(self):
        assert parse("p & q | r") == Or(And(p, q), r)

    def test_constants_and_identifiers(self):
        assert parse("tt | ff | tt_1") == Or(Or(TT, FF), Atom("tt_1"))

    def test_error_position_on_second_line(self):
        with pytest.raises(ParseError) as e:
            parse("p &\n  & q")
        assert (e.value.line, e.value.column) == (2, 3)

    def test_unclosed_paren_expects_closer(self):
        with pytest.raises(ParseError) as e:
            parse("(p & q")
        assert ")" in e.value.expected

    @pytest.mark.parametrize("bad", ["", "p q", "P", "p & & q", "F", "p $ q"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse(bad)


class TestShow:
    def test_nested_unary(self):
        assert show(Always(Eventually(p))) == "G F p"

    def test_forced_parens(self):
        assert show(And(Or(p, q), r)) == "(p | q) & r"

    def test_release_of_literal(self):
        assert show(Release(Not(p), q)) == "!p R q"

    def test_left_nested_until_needs_parens(self):
        assert show(Until(Until(p, q), r)) == "(p U q) U r"

    def test_right_nested_or_needs_parens(self):
        assert show(Or(p, Or(q, r))) == "p | (q | r)"

    def test_unary_over_binary(self):
        assert show(Next(And(p, q))) == "X (p & q)"

    @given(formulas)
    def test_round_trip(self, f):
        assert parse(show(f)) == f


class TestPnf:
    def test_not_until(self):
        assert to_pnf(Not(Until(p, q))) == Release(Not(p), Not(q))

    def test_not_next(self):
        assert to_pnf(Not(Next(p))) == Next(Not(p))

    def test_not_always(self):
        assert to_pnf(Not(Always(p))) == Eventually(Not(p))

    def test_double_negation(self):
        assert to_pnf(Not(Not(p))) == p

    def test_constants(self):
        assert to_pnf(Not(TT)) == FF

    @given(formulas)
    def test_output_is_pnf_and_linear(self, f):
        g = to_pnf(f)
        assert is_pnf(g)
        assert size(g) <= 2 * size(f)

    @given(formulas, lassos)
    def test_preserves_meaning(self, f, w):
        assert eval_lasso(f, w) == eval_lasso(to_pnf(f), w)


class TestOrder:
    def test_reflexive(self):
        assert compare(p, p) == 0

    def test_atoms_alphabetic(self):
        assert compare(p, q) == -1

    def test_rank_before_children(self):
        assert compare(p, Next(p)) == -1

    def test_rank_table(self):
        chain = [FF, TT, p, Not(p), Next(p), Eventually(p), Always(p),
                 Until(p, p), Release(p, p), And(p, p), Or(p, p)]
        assert sorted(reversed(chain), key=sort_key) == chain

    def test_sorting_small_formulas_is_total(self):
        leaves = [TT, FF, p, q, Not(p)]
        level = leaves + [c(x) for c in (Next, Eventually, Always) for x in leaves]
        level += [c(x, y) for c in (And, Or, Until, Release) for x in leaves for y in leaves]
        ordered = sorted(set(level), key=sort_key)
        for a, b in zip(ordered, ordered[1:]):
            assert compare(a, b) == -1

    @given(pnf_formulas, pnf_formulas, pnf_formulas)
    def test_strict_total_order(self, a, b, c):
        assert compare(a, b) == -compare(b, a)
        assert (compare(a, b) == 0) == (a == b)
        if compare(a, b) <= 0 and compare(b, c) <= 0:
            assert compare(a, c) <= 0


conjs = st.lists(st.sampled_from([TT, p, Eventually(p), Always(Eventually(p)), Next(q)]),
                 max_size=4).map(Conj.of)


class TestConj:
    def test_unit(self):
        assert conj(TOP, Conj.of([Eventually(p)])) == Conj.of([Eventually(p)])

    def test_idempotent_merge(self):
        fp, gfp = Eventually(p), Always(Eventually(p))
        assert conj(Conj.of([fp]), Conj.of([gfp, fp])).elems == (fp, gfp)

    def test_tt_absorbed(self):
        gfp = Always(Eventually(p))
        assert conj(Conj.of([TT]), Conj.of([gfp])) == Conj.of([gfp])

    def test_top_prints_as_tt(self):
        assert str(TOP) == "tt"

    @given(conjs, conjs, conjs)
    def test_laws(self, a, b, c):
        assert conj(a, b) == conj(b, a)
        assert conj(conj(a, b), c) == conj(a, conj(b, c))
        assert conj(a, a) == a
        assert conj(a, TOP) == a
        assert TT not in conj(a, b).elems
        keys = [sort_key(e) for e in conj(a, b).elems]
        assert keys == sorted(set(keys))


class TestStructure:
    @pytest.mark.parametrize("text,n", [("p", 1), ("G F p", 3), ("p & (q U r)", 5),
                                        ("!p", 1), ("tt", 1)])
    def test_size(self, text, n):
        assert size(parse(text)) == n

    def test_subformulae(self):
        assert subformulae(p) == {p}
        assert subformulae(parse("G F p")) == {parse("G F p"), parse("F p"), p}
        assert subformulae(And(p, p)) == {And(p, p), p}

    def test_temporal(self):
        assert is_temporal(Until(p, q)) and is_temporal(Not(p))
        assert not is_temporal(And(p, q)) and not is_temporal(Or(p, q))

    def test_hash_consistent_with_equality(self):
        for a, b in itertools.product([parse("G F p"), parse("G F p"), parse("F G p")], repeat=2):
            if a == b:
                assert hash(a) == hash(b)
