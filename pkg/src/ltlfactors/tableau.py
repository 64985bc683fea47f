"""Wolper-style semantic tableaux for LTL satisfiability.

Two constructions live here.  :func:`build_original` is the textbook
method with marked formulas and one decomposition per node.
:func:`build_optimized` exhausts decomposition with a rewrite relation on sets
of nodes and keeps only pre-states (one formula each) and states (literals and
next-formulas).  The states of a pre-state are exactly its linear factors.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import networkx as nx

from .factors import (LinearFactor, Literal, Monomial, factor_key, simp)
from .semantics import LassoWord, eval_lasso
from .syntax import (FF, TT, Always, And, Conj, Eventually, Ff, Formula,
                     Next, Not, Or, Release, Tt, Until, conjuncts, is_literal,
                     show, sort_key, to_pnf)

FIRST, LAST, LOCAL = "first", "last", "local"


# ---------------------------------------------------------------------------
# decomposition by rewriting

@lru_cache(maxsize=None)
def decomposition(f: Formula, distribute_next: bool = True) -> Optional[tuple[tuple[Formula, ...], ...]]:
    """Children of ``f`` under D1-D6, or None when ``f`` is elementary.

    Besides D1-D6: ``tt`` disappears, ``ff`` closes the branch, and (when
    ``distribute_next``) ``X`` is pushed through conjunction and disjunction so
    that states only carry next-formulas over temporal bodies.
    """
    parts = _decompose(f, distribute_next)
    return None if parts is None else tuple(parts)


def _decompose(f: Formula, distribute_next: bool) -> Optional[list[tuple[Formula, ...]]]:
    match f:
        case Or(l, r):
            return [(l,), (r,)]
        case And(l, r):
            return [(l, r)]
        case Eventually(g):
            return [(g,), (Next(f),)]
        case Always(g):
            return [(g, Next(f))]
        case Until(l, r):
            return [(r,), (l, Next(f))]
        case Release(l, r):
            return [(r, Or(l, Next(f)))]
        case Tt():
            return [()]
        case Ff():
            return []
        case Next(And(l, r)) if distribute_next:
            return [(Next(l), Next(r))]
        case Next(Or(l, r)) if distribute_next:
            return [(Next(l),), (Next(r),)]
    return None


RULE_NAME = {Or: "D1", And: "D2", Eventually: "D3", Always: "D4", Until: "D5",
             Release: "D6", Tt: "tt", Ff: "ff", Next: "X"}


def contradictory(formulas: Iterable[Formula]) -> bool:
    formulas = set(formulas)
    return FF in formulas or any(
        isinstance(f, Not) and f.arg in formulas for f in formulas)


@dataclass(frozen=True)
class StateNode:
    """A node made only of literals and next-formulas (stored by their bodies)."""
    literals: frozenset[Literal]
    nexts: frozenset[Formula]

    @classmethod
    def from_formulas(cls, formulas: Iterable[Formula]) -> StateNode:
        lits, nexts = set(), set()
        for f in formulas:
            if is_literal(f):
                lits.add(Literal.from_formula(f))
            elif isinstance(f, Next):
                nexts.add(f.arg)
            else:
                raise ValueError(f"not elementary: {show(f)}")
        return cls(frozenset(lits), frozenset(nexts))

    def formulas(self) -> frozenset[Formula]:
        return frozenset(l.formula() for l in self.literals) | {Next(g) for g in self.nexts}

    def factor(self) -> LinearFactor:
        return node_to_factor(self)

    def __str__(self):
        parts = [str(l) for l in sorted(self.literals)]
        parts += [show(Next(g)) for g in sorted(self.nexts, key=sort_key)]
        return "{" + ", ".join(parts) + "}"


def node_to_factor(s: StateNode) -> LinearFactor:
    return LinearFactor(Monomial(tuple(s.literals)), Conj.of(s.nexts))


def state_key(s: StateNode) -> tuple:
    return factor_key(node_to_factor(s))


def _multiset(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(formulas, key=sort_key))


def _multiset_key(formulas: tuple[Formula, ...]) -> tuple:
    return tuple(map(sort_key, formulas))


class _Reversed:
    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return self.key > other.key


def _is_open(node: tuple[Formula, ...]) -> bool:
    return any(decomposition(f) is not None for f in node)


def _exhaust(start: Iterable[Iterable[Formula]], strategy: str = FIRST) -> dict[tuple, frozenset]:
    """Rewrite a set of nodes until only state nodes are left.

    A node's formulas form a multiset (a sorted tuple): two occurrences of one
    formula are decomposed independently, exactly like the operands of a
    factor product.  Each node also carries the formulas decomposed on the way
    to it; nodes with equal formulas share their descendants, so they are
    merged and their marks united.  E1 is applied after every step.

    ``strategy`` FIRST rewrites the least node at its least redex, LAST the
    greatest node at its greatest redex.
    """
    first = strategy == FIRST
    pick = min if first else max
    wrap = (lambda k: k) if first else _Reversed
    pending: dict[tuple, frozenset] = {}
    done: dict[tuple, frozenset] = {}
    heap: list = []

    def add(node: tuple, marks: frozenset) -> None:
        if contradictory(node):
            return
        if not _is_open(node):
            done[node] = done.get(node, frozenset()) | marks
        elif node in pending:
            pending[node] |= marks
        else:
            pending[node] = marks
            heapq.heappush(heap, (wrap(_multiset_key(node)), node))

    for s in start:
        add(_multiset(s), frozenset())
    while heap:
        _, node = heapq.heappop(heap)
        marks = pending.pop(node)
        f = pick((g for g in node if decomposition(g) is not None), key=sort_key)
        rest = list(node)
        rest.remove(f)
        for part in decomposition(f):
            add(_multiset(rest + list(part)), marks | {f})
    return done


def _combine(options: Iterable[Iterable[tuple[tuple, frozenset]]]) -> dict[tuple, frozenset]:
    """Union of one decomposition per occurrence, dropping contradictory nodes."""
    acc: dict[tuple, frozenset] = {(): frozenset()}
    for opts in options:
        new: dict[tuple, frozenset] = {}
        for ms, marks in acc.items():
            for ms2, marks2 in opts:
                node = _multiset(ms + ms2)
                if not contradictory(node):
                    new[node] = new.get(node, frozenset()) | marks | marks2
        acc = new
    return acc


@lru_cache(maxsize=None)
def _local(f: Formula) -> tuple[tuple[tuple, frozenset], ...]:
    """Exhaustive rewriting of a single occurrence of ``f``, memoised."""
    parts = decomposition(f)
    if parts is None:
        return (((f,), frozenset()),)
    out: dict[tuple, frozenset] = {}
    for part in parts:
        for node, marks in _combine(map(_local, part)).items():
            out[node] = out.get(node, frozenset()) | marks | {f}
    return tuple(out.items())


def _exhaust_local(start: Iterable[Iterable[Formula]]) -> dict[tuple, frozenset]:
    # Rules rewrite one occurrence and leave the rest of its node alone, so
    # finishing each occurrence separately is one more rewriting order.
    out: dict[tuple, frozenset] = {}
    for s in start:
        ms = _multiset(s)
        if contradictory(ms):
            continue
        for node, marks in _combine(map(_local, ms)).items():
            out[node] = out.get(node, frozenset()) | marks
    return out


def rewrite_exhaust(start: Iterable[Iterable[Formula]], strategy: str = LOCAL) -> frozenset[StateNode]:
    """Exhaustive decomposition of a set of nodes.

    FIRST and LAST rewrite whole nodes in opposite orders; LOCAL finishes
    one formula occurrence at a time and reuses earlier results.
    """
    nodes = _exhaust_local(start) if strategy == LOCAL else _exhaust(start, strategy)
    return frozenset(StateNode.from_formulas(fs) for fs in nodes)


def expand(f: Formula) -> dict[StateNode, frozenset[Formula]]:
    """States reached from pre-state ``f`` with every formula seen on a branch leading to each."""
    out: dict[StateNode, frozenset[Formula]] = {}
    for formulas, marks in _exhaust_local([{f}]).items():
        s = StateNode.from_formulas(formulas)
        out[s] = out.get(s, frozenset()) | set(formulas) | marks
    return out


# ---------------------------------------------------------------------------
# optimized tableau

def prestate_key(f: Formula) -> Formula:
    """Canonical pre-state formula: the normalised conjunction when SIMP gives one."""
    cs = simp(f)
    if len(cs) == 1:
        return next(iter(cs)).formula()
    return f


def eventualities(pre: Formula) -> list[tuple[Formula, Formula]]:
    """``(eventuality, goal)`` pairs for the F / U conjuncts of a pre-state."""
    out = []
    for c in conjuncts(pre):
        if isinstance(c, Eventually):
            out.append((c, c.arg))
        elif isinstance(c, Until):
            out.append((c, c.right))
    return out


@dataclass(frozen=True)
class TableauGraph:
    formula: Formula
    initial: Formula
    prestates: tuple[Formula, ...]
    states: tuple[StateNode, ...]
    lf_edges: dict = field(compare=False)
    pd_edges: dict = field(compare=False)
    # formulas seen on the branches from a pre-state to one of its states
    closures: dict = field(compare=False, repr=False)
    eliminated: frozenset = frozenset()

    def is_live(self, node) -> bool:
        return node not in self.eliminated


def build_optimized(f: Formula) -> TableauGraph:
    f = to_pnf(f)
    init = prestate_key(f)
    prestates = [init]
    seen = {init}
    states: dict[StateNode, None] = {}
    lf_edges, pd_edges, closures = {}, {}, {}
    i = 0
    while i < len(prestates):
        pre = prestates[i]
        i += 1
        if pre == TT:
            lf_edges[pre] = ()
            continue
        kids = expand(pre)
        lf_edges[pre] = tuple(sorted(kids, key=state_key))
        for s in lf_edges[pre]:
            closures[pre, s] = kids[s]
            states.setdefault(s)
            target = Conj.of(s.nexts).formula()
            pd_edges[s] = target
            if target not in seen:
                seen.add(target)
                prestates.append(target)
    return TableauGraph(f, init, tuple(prestates), tuple(sorted(states, key=state_key)),
                        lf_edges, pd_edges, closures)


def _fulfilled(g: TableauGraph, start: Formula, goal: Formula,
               live_pre: set, live_states: set) -> bool:
    todo, seen = deque([start]), {start}
    while todo:
        pre = todo.popleft()
        for s in g.lf_edges[pre]:
            if s not in live_states:
                continue
            if goal in g.closures[pre, s]:
                return True
            nxt = g.pd_edges[s]
            if nxt in live_pre and nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return False


def eliminate(g: TableauGraph) -> TableauGraph:
    """Apply E2 and E3 jointly until nothing changes (E1 is built into rewriting)."""
    live_pre = set(g.prestates)
    live_states = set(g.states)
    changed = True
    while changed:
        changed = False
        for s in list(live_states):
            if g.pd_edges[s] not in live_pre:
                live_states.discard(s)
                changed = True
        for pre in list(live_pre):
            if pre != TT and not any(s in live_states for s in g.lf_edges[pre]):
                live_pre.discard(pre)
                changed = True
        for pre in list(live_pre):
            if any(not _fulfilled(g, pre, goal, live_pre, live_states)
                   for _, goal in eventualities(pre)):
                live_pre.discard(pre)
                changed = True
    dead = (set(g.prestates) - live_pre) | (set(g.states) - live_states)
    return TableauGraph(g.formula, g.initial, g.prestates, g.states, g.lf_edges,
                        g.pd_edges, g.closures, frozenset(dead))


def _positive_symbol(s: StateNode) -> frozenset[str]:
    return frozenset(l.atom for l in s.literals if not l.negated)


def extract_witness(g: TableauGraph) -> LassoWord:
    """A lasso through live nodes that loops inside a bottom strongly connected component.

    E3 guarantees that each eventuality of a pre-state in a bottom component
    is fulfilled by some edge of that component, so a closed walk through one
    fulfilling edge per eventuality satisfies them all.
    """
    if not g.is_live(g.initial):
        raise ValueError("initial pre-state is eliminated; no witness exists")
    h = nx.MultiDiGraph()
    for pre in g.prestates:
        if g.is_live(pre):
            h.add_node(pre)
    for pre in g.prestates:
        if not g.is_live(pre):
            continue
        for s in g.lf_edges[pre]:
            tgt = g.pd_edges[s]
            if g.is_live(s) and g.is_live(tgt):
                h.add_edge(pre, tgt, key=s)
    reach = nx.single_source_shortest_path_length(h, g.initial)
    sub = h.subgraph(reach)
    cond = nx.condensation(sub)
    bottoms = [cond.nodes[c]["members"] for c in cond.nodes if cond.out_degree(c) == 0]
    # nearest bottom component, ties broken by the formula order
    bottom = min(bottoms, key=lambda m: min((reach[p], sort_key(p)) for p in m))
    entry = min(bottom, key=lambda p: (reach[p], sort_key(p)))

    def hop(u, v) -> StateNode:
        return min(h[u][v], key=state_key)

    def walk(path) -> list[frozenset[str]]:
        return [_positive_symbol(hop(u, v)) for u, v in zip(path, path[1:])]

    prefix = walk(nx.shortest_path(sub, g.initial, entry))
    if bottom == {TT}:
        return LassoWord(tuple(prefix), (frozenset(),))
    comp = sub.subgraph(bottom)
    edges = sorted(comp.edges(keys=True),
                   key=lambda e: (sort_key(e[0]), sort_key(e[1]), state_key(e[2])))
    # one fulfilling edge per eventuality; every eventuality met on the walk is covered
    required = []
    for pre in sorted(bottom, key=sort_key):
        for _, goal in eventualities(pre):
            e = next(e for e in edges if goal in g.closures[e[0], e[2]])
            if e not in required:
                required.append(e)
    if not required:
        required = [next(e for e in edges if e[0] == entry)]
    loop: list[frozenset[str]] = []
    here = entry
    for u, v, s in required:
        loop += walk(nx.shortest_path(comp, here, u))
        loop.append(_positive_symbol(s))
        here = v
    loop += walk(nx.shortest_path(comp, here, entry))
    return LassoWord(tuple(prefix), tuple(loop))


@dataclass(frozen=True)
class Verdict:
    satisfiable: bool
    witness: Optional[LassoWord] = None

    def __bool__(self):
        return self.satisfiable


def is_satisfiable(f: Formula) -> Verdict:
    g = eliminate(build_optimized(f))
    if not g.is_live(g.initial):
        return Verdict(False)
    w = extract_witness(g)
    if not eval_lasso(f, w):
        raise RuntimeError(f"witness {w} does not satisfy {show(f)}")
    return Verdict(True, w)


def transition_structure(g: TableauGraph) -> dict:
    """Pre-state graph with edges ``(pre-state, state guard, pd-child)``."""
    edges = set()
    for pre in g.prestates:
        for s in g.lf_edges[pre]:
            edges.add((show(pre), str(node_to_factor(s).monomial), show(g.pd_edges[s])))
    return {"nodes": sorted(show(p) for p in g.prestates), "edges": sorted(edges)}


def to_dict(g: TableauGraph) -> dict:
    ids = {p: f"n{i}" for i, p in enumerate(g.prestates)}
    ids.update({s: f"s{i}" for i, s in enumerate(g.states)})
    nodes = [{"id": ids[p], "kind": "prestate", "label": show(p), "eliminated": not g.is_live(p)}
             for p in g.prestates]
    nodes += [{"id": ids[s], "kind": "state", "label": str(s.factor()),
               "eliminated": not g.is_live(s)} for s in g.states]
    edges = []
    for p in g.prestates:
        edges += [{"from": ids[p], "to": ids[s], "label": "LF"} for s in g.lf_edges[p]]
    edges += [{"from": ids[s], "to": ids[g.pd_edges[s]], "label": "PD"} for s in g.states]
    return {"formula": show(g.formula), "initial": ids[g.initial], "nodes": nodes, "edges": edges}


def _dot_label(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_tableau_dot(g: TableauGraph) -> str:
    d = to_dict(g)
    lines = ["digraph tableau {"]
    for n in d["nodes"]:
        shape = "ellipse" if n["kind"] == "prestate" else "box"
        style = ', style=filled, fillcolor=grey' if n["eliminated"] else ""
        lines.append(f'  {n["id"]} [shape={shape}, label="{_dot_label(n["label"])}"{style}];')
    for e in d["edges"]:
        lines.append(f'  {e["from"]} -> {e["to"]} [label="{e["label"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# original construction with marked formulas

@dataclass(frozen=True)
class WolperNode:
    formulas: frozenset[Formula]
    marks: frozenset[Formula] = frozenset()

    def contains(self, f: Formula) -> bool:
        return f in self.formulas or f in self.marks

    def __str__(self):
        parts = [show(f) + "*" for f in sorted(self.marks, key=sort_key)]
        parts += [show(f) for f in sorted(self.formulas, key=sort_key)]
        return "{" + ", ".join(parts) + "}"


@dataclass
class OriginalTableau:
    formula: Formula
    nodes: list[WolperNode]
    edges: dict[int, list[tuple[int, str]]]
    prestates: set[int]
    states: set[int]
    eliminated: dict[int, str] = field(default_factory=dict)

    @property
    def satisfiable(self) -> bool:
        return 0 not in self.eliminated

    def index(self, node: WolperNode) -> int:
        return self.nodes.index(node)


def build_original(f: Formula) -> OriginalTableau:
    """Wolper's construction: one rule per node, biggest unmarked formula first, then E1-E3.

    Contradictory nodes are not expanded, and the empty node stands for ``tt``
    and is not expanded either.
    """
    f = to_pnf(f)
    root = WolperNode(frozenset({f}))
    nodes, index = [root], {root: 0}
    edges: dict[int, list[tuple[int, str]]] = {}
    prestates, states = {0}, set()
    todo = deque([0])

    def child(node: WolperNode, label: str, parent: int) -> int:
        if node not in index:
            index[node] = len(nodes)
            nodes.append(node)
            todo.append(index[node])
        edges.setdefault(parent, []).append((index[node], label))
        return index[node]

    while todo:
        i = todo.popleft()
        node = nodes[i]
        if contradictory(node.formulas) or not node.formulas:
            continue
        pending = [g for g in node.formulas if decomposition(g, distribute_next=False) is not None]
        if pending:
            g = max(pending, key=sort_key)
            for part in decomposition(g, distribute_next=False):
                child(WolperNode((node.formulas - {g}) | set(part), node.marks | {g}),
                      RULE_NAME[type(g)], i)
        else:
            states.add(i)
            j = child(WolperNode(frozenset(h.arg for h in node.formulas if isinstance(h, Next))),
                      "step", i)
            prestates.add(j)
    tableau = OriginalTableau(f, nodes, edges, prestates, states)
    _eliminate_original(tableau)
    return tableau


def _eliminate_original(t: OriginalTableau) -> None:
    dead = t.eliminated
    for i, node in enumerate(t.nodes):
        if contradictory(node.formulas):
            dead[i] = "E1"

    def succ(i):
        return [j for j, _ in t.edges.get(i, [])]

    def reaches(i: int, goal: Formula) -> bool:
        todo, seen = deque([i]), {i}
        while todo:
            k = todo.popleft()
            if t.nodes[k].contains(goal):
                return True
            for j in succ(k):
                if j not in dead and j not in seen:
                    seen.add(j)
                    todo.append(j)
        return False

    changed = True
    while changed:
        changed = False
        for i, node in enumerate(t.nodes):
            if i in dead or not node.formulas:
                continue
            if all(j in dead for j in succ(i)):
                dead[i] = "E2"
                changed = True
            elif any(not reaches(i, goal) for _, goal in _node_eventualities(node.formulas)):
                dead[i] = "E3"
                changed = True


def _node_eventualities(formulas: Iterable[Formula]) -> list[tuple[Formula, Formula]]:
    return [pair for g in sorted(formulas, key=sort_key) for pair in eventualities(g)
            if pair[0] == g]


def original_to_dict(t: OriginalTableau) -> dict:
    nodes = []
    for i, n in enumerate(t.nodes):
        kind = "prestate" if i in t.prestates else "state" if i in t.states else "node"
        nodes.append({"id": f"S{i}", "kind": kind, "formulas": sorted(map(show, n.formulas)),
                      "marked": sorted(map(show, n.marks)), "eliminated": t.eliminated.get(i)})
    edges = [{"from": f"S{i}", "to": f"S{j}", "label": label}
             for i in sorted(t.edges) for j, label in t.edges[i]]
    return {"formula": show(t.formula), "satisfiable": t.satisfiable, "nodes": nodes, "edges": edges}


def export_original_dot(t: OriginalTableau) -> str:
    lines = ["digraph wolper {"]
    for i, n in enumerate(t.nodes):
        shape = "box" if i in t.states else "ellipse"
        style = ', style=filled, fillcolor=grey' if i in t.eliminated else ""
        lines.append(f'  S{i} [shape={shape}, label="S{i} = {_dot_label(str(n))}"{style}];')
    for i in sorted(t.edges):
        for j, label in t.edges[i]:
            lines.append(f'  S{i} -> S{j} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g) -> str:
    d = original_to_dict(g) if isinstance(g, OriginalTableau) else to_dict(g)
    return json.dumps(d, indent=2)
