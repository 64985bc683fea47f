import json

import pytest
from hypothesis import given

from conftest import ATOMS, lassos, pnf_formulas
from ltlfactors.automaton import (accepts_lasso, build_aa, export_dot, export_json,
                                  is_one_weak, to_dict)
from ltlfactors.derivatives import rho
from ltlfactors.semantics import eval_lasso, parse_lasso
from ltlfactors.syntax import FF, TOP, TT, Conj, parse

P = frozenset({"p"})


def C(*texts):
    return Conj.of(parse(t) for t in texts)


class TestBuild:
    def test_always_eventually(self):
        a = build_aa(parse("G F p"))
        assert set(a.states) == {parse("G F p"), parse("F p"), parse("p")}
        assert a.delta[parse("G F p"), P] == {C("G F p"), C("F p", "G F p")}
        assert a.accepting == {parse("G F p")}
        assert a.initial == {C("G F p")}

    def test_ff(self):
        a = build_aa(FF)
        assert a.initial == {C("ff")}
        assert all(a.delta[FF, x] == frozenset() for x in a.alphabet)

    def test_tt(self):
        a = build_aa(TT)
        assert a.delta[TT, frozenset()] == {TOP}
        assert TT in a.accepting

    def test_release_accepting(self):
        a = build_aa(parse("p U q & r R s"))
        assert a.accepting == {parse("r R s")}

    def test_tt_variant(self):
        a = build_aa(parse("F p"), tt_sink=False)
        assert TT not in a.accepting
        assert a.delta.get((TT, P), frozenset()) == frozenset()

    def test_converts_to_pnf(self):
        assert build_aa(parse("!F p")).formula == parse("G !p")

    @given(pnf_formulas)
    def test_delta_is_rho(self, f):
        a = build_aa(f, ATOMS, check=True)
        for (q, x), alts in a.delta.items():
            assert alts == rho(q, x)

    @given(pnf_formulas)
    def test_one_weak_and_closed(self, f):
        a = build_aa(f, ATOMS)
        assert is_one_weak(a)
        states = set(a.states)
        for alts in list(a.delta.values()) + [a.initial]:
            for c in alts:
                assert set(c.elems) <= states


class TestAcceptance:
    def test_examples(self):
        a = build_aa(parse("G F p"))
        assert accepts_lasso(a, parse_lasso("; {p}")).accepted
        assert not accepts_lasso(a, parse_lasso("; {}")).accepted
        assert not accepts_lasso(build_aa(FF), parse_lasso("; {}")).accepted

    def test_trace(self):
        v = accepts_lasso(build_aa(parse("F p")), parse_lasso("{} ; {p} {}"), trace=True)
        assert v.trace[parse("F p")] == (True, True, True)
        assert v.trace[parse("p")] == (False, True, False)

    def test_symbol_outside_alphabet(self):
        with pytest.raises(ValueError):
            accepts_lasso(build_aa(parse("p")), parse_lasso("; {q}"))

    @given(pnf_formulas, lassos)
    def test_language_equality(self, f, w):
        expected = eval_lasso(f, w)
        assert accepts_lasso(build_aa(f, ATOMS), w).accepted == expected
        assert accepts_lasso(build_aa(f, ATOMS, tt_sink=False), w).accepted == expected


class TestExport:
    def test_json_always_eventually(self):
        d = json.loads(export_json(build_aa(parse("G F p"))))
        assert d["states"] == ["p", "F p", "G F p"]
        assert d["accepting"] == ["G F p"]
        assert d["transitions"] == [
            ["p", ["p"], []],
            ["F p", ["p"], []],
            ["F p", [], ["F p"]],
            ["G F p", ["p"], ["G F p"]],
            ["G F p", [], ["F p", "G F p"]],
        ]

    def test_json_atom_and_tt(self):
        assert to_dict(build_aa(parse("p")))["transitions"] == [["p", ["p"], []]]
        d = to_dict(build_aa(TT))
        assert d["states"] == ["tt"] and d["transitions"] == [["tt", [], []]]

    def test_dot_shapes(self):
        dot = export_dot(build_aa(parse("G F p")))
        assert dot.count("doublecircle") == 2  # G F p and the sink
        assert "shape=point, label=\"\"" in dot
        ff = export_dot(build_aa(FF))
        assert "->" in ff and "top" not in ff

    def test_dot_atom(self):
        dot = export_dot(build_aa(parse("p")))
        assert 'q0 -> top [label="p"];' in dot

    @given(pnf_formulas)
    def test_stable(self, f):
        assert export_json(build_aa(f)) == export_json(build_aa(f))

    def test_injective_on_samples(self):
        texts = ["p", "q", "F p", "G p", "G F p", "F G p", "p U q", "p R q", "X p", "ff", "tt"]
        dumps = {export_json(build_aa(parse(t))) for t in texts}
        assert len(dumps) == len(texts)
