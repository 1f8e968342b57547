"""Command-line front end.

Exit codes: 0 verdict true, 1 verdict false, 2 any error, 3 the oracle
disagrees with the checker.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import format_possibility, possibility
from .checker import CheckResult, UnknownAtomError, sat
from .formula import Po, WellFormednessError, is_poctl, to_text
from .model import ModelError, UnknownStateError, alpha_cut_ts, plus_structure, validate
from .modelfile import load_model
from .oracle import OracleBudget, oracle_check
from .parser import FormulaSyntaxError, parse_ctl, parse_formula
from .translate import embed_ctl, embed_ctl_alpha

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2, 3


@dataclass
class RunReport:
    model_path: str
    formula_text: str
    rows: list[tuple[str, Fraction | None, bool]] = field(default_factory=list)
    verdict: bool = False
    wall_time_ms: float = 0.0


def _report(model, path, text, result: CheckResult, formula, only: str | None, elapsed_ms: float) -> RunReport:
    top = formula if isinstance(formula, Po) else None
    rows = []
    for s in model.states:
        value = result.value(top, s) if top is not None and top in result.po_values else None
        rows.append((s, value, s in result.sat))
    if only is not None:
        model.index(only)
        verdict = only in result.sat
    else:
        verdict = all(s in result.sat for s, v in zip(model.states, model.initial) if v > 0)
    return RunReport(str(path), text, rows, verdict, elapsed_ms)


def _print_report(report: RunReport, fmt: str, out) -> None:
    if fmt == "json-lines":
        for s, value, ok in report.rows:
            row = {"state": s, "value": None if value is None else format_possibility(value), "sat": ok}
            print(json.dumps(row), file=out)
        summary = {
            "model": report.model_path,
            "formula": report.formula_text,
            "verdict": report.verdict,
            "wall_time_ms": round(report.wall_time_ms, 3),
        }
        print(json.dumps(summary), file=out)
        return
    print("state\tvalue\tsat", file=out)
    for s, value, ok in report.rows:
        shown = "-" if value is None else format_possibility(value)
        print(f"{s}\t{shown}\t{'yes' if ok else 'no'}", file=out)
    print(f"verdict: {'true' if report.verdict else 'false'}", file=out)


def _load_formula(text: str):
    f = parse_formula(text)
    return f if is_poctl(f) else embed_ctl(f)


def _budget(args) -> OracleBudget:
    return OracleBudget(args.max_stem, args.max_cycle, args.max_prefix)


def cmd_check(args, out) -> int:
    model = load_model(args.model)
    formula = _load_formula(args.formula)
    start = time.perf_counter()
    result = sat(model, formula)
    elapsed = (time.perf_counter() - start) * 1000
    report = _report(model, args.model, args.formula, result, formula, args.state, elapsed)
    _print_report(report, args.format, out)
    if args.oracle:
        expected = oracle_check(model, formula)
        if expected.sat != result.sat or expected.po_values != result.po_values:
            print(
                f"oracle mismatch: checker {sorted(result.sat)} vs oracle {sorted(expected.sat)}",
                file=sys.stderr,
            )
            return EXIT_MISMATCH
    return EXIT_TRUE if report.verdict else EXIT_FALSE


def cmd_oracle(args, out) -> int:
    model = load_model(args.model)
    formula = _load_formula(args.formula)
    start = time.perf_counter()
    result = oracle_check(model, formula, _budget(args))
    elapsed = (time.perf_counter() - start) * 1000
    report = _report(model, args.model, args.formula, result, formula, args.state, elapsed)
    _print_report(report, args.format, out)
    return EXIT_TRUE if report.verdict else EXIT_FALSE


def cmd_translate(args, out) -> int:
    f = parse_ctl(args.formula)
    g = embed_ctl(f) if args.alpha is None else embed_ctl_alpha(f, possibility(args.alpha))
    print(to_text(g), file=out)
    return EXIT_TRUE


def _dot_id(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def cmd_export_dot(args, out) -> int:
    model = load_model(args.model)
    if args.plus:
        model = plus_structure(model)
    lines = ["digraph M {"]
    for s, v, lab in zip(model.states, model.initial, model.labels):
        label = f"{s}\\n{{{', '.join(sorted(lab))}}}"
        extra = f", xlabel=\"I={format_possibility(v)}\"" if v > 0 else ""
        lines.append(f"  {_dot_id(s)} [label=\"{label}\"{extra}];")
    if args.alpha is not None:
        ts = alpha_cut_ts(model, possibility(args.alpha))
        edges = [(s, t) for s in model.states for t in model.states if (s, t) in ts.edges]
    else:
        edges = [(s, t) for s in model.states for t in model.states if model.P(s, t) > 0]
    for s, t in edges:
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [label=\"{format_possibility(model.P(s, t))}\"];")
    lines.append("}")
    print("\n".join(lines), file=out)
    return EXIT_TRUE


def cmd_validate(args, out) -> int:
    model = load_model(args.model, check=False)
    problems = validate(model)
    if not problems:
        print("ok", file=out)
        return EXIT_TRUE
    for p in problems:
        print(p, file=out)
    return EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poctl", description="Possibilistic CTL model checker")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("model")
        p.add_argument("formula")
        p.add_argument("--state", help="decide the formula for this state only")
        p.add_argument("--format", choices=("table", "json-lines"), default="table")
        return p

    p = add_run("check", "compute the satisfaction set of a formula")
    p.add_argument("--oracle", action="store_true", help="cross-check against path enumeration")
    p.set_defaults(run=cmd_check)

    p = add_run("oracle", "evaluate a formula by path enumeration")
    p.add_argument("--max-stem", type=int)
    p.add_argument("--max-cycle", type=int)
    p.add_argument("--max-prefix", type=int)
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("translate", help="print the PoCTL equivalent of a CTL formula")
    p.add_argument("formula")
    p.add_argument("--alpha", help="use the alpha-cut equivalence at this level")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("export-dot", help="render the model as a Graphviz digraph")
    p.add_argument("model")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--plus", action="store_true", help="export the transitive-closure structure")
    group.add_argument("--alpha", help="export the alpha-cut transition system")
    p.set_defaults(run=cmd_export_dot)

    p = sub.add_parser("validate", help="report normality violations")
    p.add_argument("model")
    p.set_defaults(run=cmd_validate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_TRUE if exc.code == 0 else EXIT_ERROR
    try:
        return args.run(args, out)
    except (
        OSError,
        ModelError,
        FormulaSyntaxError,
        WellFormednessError,
        UnknownAtomError,
        UnknownStateError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # keep the exit-code contract total
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
