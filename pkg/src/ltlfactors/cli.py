"""Command-line interface: ``ltlf <subcommand> [FORMULA] [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import automaton, tableau
from .crosscheck import crosscheck
from .derivatives import descendants, pderiv_formula
from .factors import lf, sorted_factors
from .semantics import eval_lasso, parse_lasso, parse_symbol
from .syntax import ParseError, Formula, is_pnf, parse, show, size, sorted_conjs, to_pnf

EXIT_OK, EXIT_UNSAT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_formula(args) -> Formula:
    text = sys.stdin.read() if args.formula == "-" else args.formula
    if text is None:
        raise UsageError("a formula (or '-' for stdin) is required")
    return parse(text.strip())


def _conj_lines(cs) -> list[str]:
    return [str(c) for c in sorted_conjs(cs)]


def _conj_json(cs) -> list[list[str]]:
    return [[show(e) for e in c.elems] for c in sorted_conjs(cs)]


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    elif text:
        print(text)


def cmd_parse(args) -> int:
    f = _read_formula(args)
    _emit(args, show(f), {"formula": show(f), "size": size(f), "pnf": is_pnf(f)})
    return EXIT_OK


def cmd_pnf(args) -> int:
    f = to_pnf(_read_formula(args))
    _emit(args, show(f), {"formula": show(f)})
    return EXIT_OK


def cmd_lf(args) -> int:
    facs = sorted_factors(lf(to_pnf(_read_formula(args))))
    _emit(args, "\n".join(map(str, facs)), [x.to_json() for x in facs])
    return EXIT_OK


def cmd_deriv(args) -> int:
    if args.symbol is None:
        raise UsageError("deriv needs --symbol")
    ds = pderiv_formula(to_pnf(_read_formula(args)), parse_symbol(args.symbol))
    _emit(args, "\n".join(_conj_lines(ds)), _conj_json(ds))
    return EXIT_OK


def cmd_descendants(args) -> int:
    ds = descendants(to_pnf(_read_formula(args)))
    _emit(args, "\n".join(_conj_lines(ds)), _conj_json(ds))
    return EXIT_OK


def _aa_text(a: automaton.AlternatingAutomaton) -> str:
    lines = [f"formula: {show(a.formula)}",
             f"atoms: {', '.join(a.atoms)}",
             f"states: {', '.join(map(show, a.states))}",
             f"accepting: {', '.join(show(q) for q in a.states if q in a.accepting)}",
             f"initial: {' | '.join(_conj_lines(a.initial))}"]
    lines += [f"{show(q)} --[{m}]--> {c}" for q, m, c in a.transitions]
    return "\n".join(lines)


def cmd_aa(args) -> int:
    a = automaton.build_aa(_read_formula(args))
    fmt = "json" if args.json else args.format
    if fmt == "dot":
        sys.stdout.write(automaton.export_dot(a))
    elif fmt == "json":
        print(automaton.export_json(a))
    else:
        print(_aa_text(a))
    return EXIT_OK


def _optimized_text(g: tableau.TableauGraph) -> str:
    lines = []
    for p in g.prestates:
        mark = "" if g.is_live(p) else "  [eliminated]"
        lines.append(f"pre-state {show(p)}{mark}")
        for s in g.lf_edges[p]:
            mark = "" if g.is_live(s) else "  [eliminated]"
            lines.append(f"  LF {s.factor()} PD {show(g.pd_edges[s])}{mark}")
    lines.append("SAT" if g.is_live(g.initial) else "UNSAT")
    return "\n".join(lines)


def _original_text(t: tableau.OriginalTableau) -> str:
    lines = []
    for i, n in enumerate(t.nodes):
        reason = t.eliminated.get(i)
        lines.append(f"S{i} = {n}" + (f"  [eliminated: {reason}]" if reason else ""))
        for j, label in t.edges.get(i, []):
            lines.append(f"  {label} -> S{j}")
    lines.append("SAT" if t.satisfiable else "UNSAT")
    return "\n".join(lines)


def cmd_tableau(args) -> int:
    f = _read_formula(args)
    fmt = "json" if args.json else args.format
    if args.original:
        t = tableau.build_original(f)
        out = {"dot": tableau.export_original_dot, "json": tableau.export_json,
               "text": _original_text}[fmt](t)
    else:
        g = tableau.eliminate(tableau.build_optimized(f))
        out = {"dot": tableau.export_tableau_dot, "json": tableau.export_json,
               "text": _optimized_text}[fmt](g)
    print(out.rstrip("\n"))
    return EXIT_OK


def cmd_sat(args) -> int:
    v = tableau.is_satisfiable(_read_formula(args))
    witness = str(v.witness) if v.witness else None
    text = f"SAT\nwitness: {witness}" if v else "UNSAT"
    _emit(args, text, {"satisfiable": v.satisfiable, "witness": witness})
    return EXIT_OK if v else EXIT_UNSAT


def cmd_eval(args) -> int:
    if args.lasso is None:
        raise UsageError("eval needs --lasso")
    verdict = eval_lasso(_read_formula(args), parse_lasso(args.lasso))
    _emit(args, "true" if verdict else "false", {"value": verdict})
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    report = crosscheck(args.seed, args.count, args.max_size)
    if args.json:
        print(json.dumps({"cases": report.cases, "passed": report.passed,
                          "checked": report.checked,
                          "failures": [vars(f) for f in report.failures]}, indent=2))
    else:
        print(report.summary())
    print(f"wall time: {report.seconds:.2f}s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_UNSAT


COMMANDS = {
    "parse": (cmd_parse, "parse and pretty-print a formula"),
    "pnf": (cmd_pnf, "positive normal form"),
    "lf": (cmd_lf, "linear factors"),
    "deriv": (cmd_deriv, "partial derivative by one symbol"),
    "descendants": (cmd_descendants, "all derivative descendants"),
    "aa": (cmd_aa, "alternating automaton"),
    "tableau": (cmd_tableau, "tableau graph after elimination"),
    "sat": (cmd_sat, "satisfiability (exit 0 SAT, 1 UNSAT)"),
    "eval": (cmd_eval, "evaluate on a lasso word"),
    "crosscheck": (cmd_crosscheck, "randomised cross-module checks"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ltlf", description="LTL linear factors, derivatives, automata and tableaux")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_)
        if name != "crosscheck":
            s.add_argument("formula", nargs="?", help="formula text, or - to read stdin")
        s.add_argument("--json", action="store_true", help="structured output")
        if name == "deriv":
            s.add_argument("--symbol", help='symbol such as "{p,q}"')
        if name == "eval":
            s.add_argument("--lasso", help='lasso such as "{p} ; {} {p}"')
        if name in ("aa", "tableau"):
            s.add_argument("--format", choices=("text", "dot", "json"), default="text")
        if name == "tableau":
            g = s.add_mutually_exclusive_group()
            g.add_argument("--original", action="store_true")
            g.add_argument("--optimized", action="store_true")
        if name == "crosscheck":
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--count", type=int, default=100)
            s.add_argument("--max-size", type=int, default=8)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command][0](args)
    except (UsageError, ParseError, ValueError) as e:
        print(f"ltlf: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
