from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ltlfactors.semantics import LassoWord
from ltlfactors.syntax import (FF, TT, Always, And, Atom, Eventually, Next, Not,
                               Or, Release, Until, size)

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ATOMS = ("p", "q")

literals = st.sampled_from([Atom("p"), Atom("q"), Not(Atom("p")), Not(Atom("q"))])
leaves = st.one_of(literals, literals, literals, st.just(TT), st.just(FF))


def _extend(children, with_not=False):
    ops = [st.builds(Next, children), st.builds(Eventually, children),
           st.builds(Always, children)]
    ops += [st.builds(c, children, children) for c in (And, Or, Until, Release)]
    if with_not:
        ops.append(st.builds(Not, children))
    return st.one_of(*ops)


pnf_formulas = st.recursive(leaves, _extend, max_leaves=6).filter(lambda f: size(f) <= 12)
formulas = st.recursive(leaves, lambda c: _extend(c, True), max_leaves=6)
small_pnf = st.recursive(leaves, _extend, max_leaves=4).filter(lambda f: size(f) <= 8)

symbols = st.frozensets(st.sampled_from(ATOMS))
lassos = st.builds(LassoWord,
                   st.lists(symbols, max_size=3).map(tuple),
                   st.lists(symbols, min_size=1, max_size=4).map(tuple))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        name, ok, detail = RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {name}: {detail}")
