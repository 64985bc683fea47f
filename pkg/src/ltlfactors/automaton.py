"""1-weak alternating omega-automata built from partial derivatives.

States are the iterated partial derivatives of the formula, transitions are
derivatives of single states, and the initial alternatives are the SIMP
normal form.  A conjunction of successor states is a :class:`Conj`; the empty
conjunction is the accepting sink.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .derivatives import iterated, pderiv, rho
from .factors import (LinearFactor, Monomial, TRUE_MONOMIAL, factor_product, lf,
                      monomial_key, simp)
from .semantics import LassoWord, alphabet, show_symbol, symbol_at
from .syntax import (TOP, TT, Always, Conj, Formula, Release, atoms, conj_key,
                     show, size, sort_key, sorted_conjs, subformulae, to_pnf)


@dataclass(frozen=True)
class AlternatingAutomaton:
    formula: Formula
    atoms: tuple[str, ...]
    states: tuple[Formula, ...]
    delta: dict = field(compare=False)
    initial: frozenset[Conj]
    accepting: frozenset[Formula]
    # guard-level view of delta: (state, monomial, successor conjunction)
    transitions: tuple[tuple[Formula, Monomial, Conj], ...]
    tt_sink: bool = True

    @property
    def alphabet(self) -> list[frozenset[str]]:
        return alphabet(self.atoms)

    def successors(self, q: Formula, x: frozenset[str]) -> frozenset[Conj]:
        return self.delta[q, x]


@dataclass(frozen=True)
class RunVerdict:
    accepted: bool
    trace: Optional[dict[Formula, tuple[bool, ...]]] = None

    def __bool__(self):
        return self.accepted


def _is_accepting_state(q: Formula) -> bool:
    # G psi is ff R psi
    return isinstance(q, (Release, Always)) or q == TT


def build_aa(f: Formula, aps: Optional[Iterable[str]] = None, tt_sink: bool = True,
             check: bool = False) -> AlternatingAutomaton:
    """Build the automaton for ``f`` (converted to PNF first).

    ``tt_sink=False`` builds the variant where ``tt`` has no transitions and is
    not accepting.  ``check`` asserts that every transition agrees with the
    direct derivative.
    """
    f = to_pnf(f)
    aps = tuple(sorted(atoms(f) if aps is None else set(aps)))
    states = tuple(sorted(iterated(f), key=lambda q: (size(q), sort_key(q))))
    sigma = alphabet(aps)
    delta = {}
    transitions = []
    for q in states:
        for x in sigma:
            if q == TT and not tt_sink:
                delta[q, x] = frozenset()
            else:
                delta[q, x] = pderiv(Conj.of([q]), x)
            if check and delta[q, x] != rho(q, x) and (tt_sink or q != TT):
                raise AssertionError(f"delta({show(q)}, {show_symbol(x)}) differs from rho")
        if q == TT and not tt_sink:
            continue
        for fac in lf(q):
            transitions.append((q, fac.monomial, fac.next))
    accepting = frozenset(q for q in states if _is_accepting_state(q)
                          and (tt_sink or q != TT))
    transitions.sort(key=lambda t: (sort_key(t[0]), monomial_key(t[1]), conj_key(t[2])))
    return AlternatingAutomaton(f, aps, states, delta, simp(f), accepting,
                                tuple(transitions), tt_sink)


def is_one_weak(a: AlternatingAutomaton) -> bool:
    """Every successor of ``q`` is ``q`` itself or a proper subformula of ``q``."""
    for (q, _), alts in a.delta.items():
        below = subformulae(q)
        for c in alts:
            if any(s != q and s not in below for s in c.elems):
                return False
    return True


def accepts_lasso(a: AlternatingAutomaton, w: LassoWord, trace: bool = False) -> RunVerdict:
    """Decide whether an accepting run exists on ``prefix . loop^omega``.

    1-weakness makes every cycle a self-loop, so each state is solved on the
    position ring after all of its (smaller) successors: greatest fixpoint for
    accepting states, least fixpoint otherwise.
    """
    allowed = frozenset(a.atoms)
    for x in w.prefix + w.loop:
        if not x <= allowed:
            raise ValueError(f"symbol {show_symbol(x)} outside the alphabet over {sorted(allowed)}")
    n = len(w)
    acc: dict[Formula, list[bool]] = {}

    def holds(c: Conj, i: int) -> bool:
        return all(acc[s][i] for s in c.elems)

    for q in a.states:  # sorted by size, so successors other than q are done
        table = [q in a.accepting] * n
        acc[q] = table
        while True:
            new = [any(holds(c, w.successor(i)) for c in a.delta[q, symbol_at(w, i)])
                   for i in range(n)]
            if new == acc[q]:
                break
            acc[q] = new
    accepted = any(holds(c, 0) for c in a.initial)
    return RunVerdict(accepted, {q: tuple(t) for q, t in acc.items()} if trace else None)


# ---------------------------------------------------------------------------
# exports

def _conj_json(c: Conj) -> list[str]:
    return [show(e) for e in c.elems]


def to_dict(a: AlternatingAutomaton) -> dict:
    return {
        "formula": show(a.formula),
        "atoms": list(a.atoms),
        "states": [show(q) for q in a.states],
        "initial": [_conj_json(c) for c in sorted_conjs(a.initial)],
        "accepting": [show(q) for q in a.states if q in a.accepting],
        "transitions": [[show(q), [str(l) for l in m.lits], _conj_json(c)]
                        for q, m, c in a.transitions],
    }


def export_json(a: AlternatingAutomaton) -> str:
    return json.dumps(to_dict(a), indent=2)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(a: AlternatingAutomaton) -> str:
    names = {q: f"q{i}" for i, q in enumerate(a.states)}
    lines = ["digraph AA {", "  rankdir=LR;", '  node [shape=circle];',
             '  init [shape=point];']
    for q in a.states:
        shape = "doublecircle" if q in a.accepting else "circle"
        lines.append(f'  {names[q]} [label="{_dot_escape(show(q))}", shape={shape}];')
    sink = any(c.is_top for _, _, c in a.transitions) or TOP in a.initial
    if sink:
        lines.append('  top [label="tt", shape=doublecircle];')

    def target(c: Conj) -> str:
        return "top" if c.is_top else names[c.elems[0]]

    junctions = 0

    def edge(src: str, c: Conj, label: str) -> None:
        nonlocal junctions
        attr = f' [label="{_dot_escape(label)}"]' if label else ""
        if len(c) <= 1:
            lines.append(f"  {src} -> {target(c)}{attr};")
            return
        j = f"j{junctions}"
        junctions += 1
        lines.append(f'  {j} [shape=point, label=""];')
        lines.append(f"  {src} -> {j}{attr};")
        for s in c.elems:
            lines.append(f"  {j} -> {names[s]};")

    for c in sorted_conjs(a.initial):
        edge("init", c, "")
    for q, m, c in a.transitions:
        edge(names[q], c, str(m))
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# conjunction-level structure, used to compare with the tableau

def conj_factors(a: AlternatingAutomaton, c: Conj) -> frozenset[LinearFactor]:
    """Guarded successors of a conjunction of states, from the transition table alone."""
    by_state: dict[Formula, list[LinearFactor]] = {}
    for q, m, nxt in a.transitions:
        by_state.setdefault(q, []).append(LinearFactor(m, nxt))
    out = {LinearFactor(TRUE_MONOMIAL, TOP)}
    for q in c.elems:
        out = factor_product(out, by_state.get(q, ()))
    return frozenset(out)


def transition_structure(a: AlternatingAutomaton) -> dict:
    """Reachable conjunction graph: nodes and ``(source, guard, target)`` edges.

    The sink ``tt`` is a node but is not expanded.  A formula with several
    initial alternatives gets one initial node whose edges are the union.
    """
    inits = sorted_conjs(a.initial)
    if len(inits) == 1:
        root = show(inits[0].formula())
        root_edges = conj_factors(a, inits[0]) if not inits[0].is_top else frozenset()
    else:
        root = show(a.formula)
        root_edges = frozenset().union(*(conj_factors(a, c) for c in inits))
    nodes = {root}
    edges = set()
    todo = []

    def add(src: str, facs) -> None:
        for fac in facs:
            tgt = show(fac.next.formula())
            edges.add((src, str(fac.monomial), tgt))
            if tgt not in nodes:
                nodes.add(tgt)
                todo.append(fac.next)

    add(root, root_edges)
    while todo:
        c = todo.pop()
        if not c.is_top:
            add(show(c.formula()), conj_factors(a, c))
    return {"nodes": sorted(nodes), "edges": sorted(edges)}
