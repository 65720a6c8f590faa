"""``harary`` command line: graph generation, metrics, and differential sweeps.

Exit status: 0 success, 1 at least one Mismatch (sweep/verify), 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .distances import graph_stats
from .formulas import DiameterRule, closeness_formula, diameter_formula, residual_formula
from .graphs import HararyParams, ParameterError, build_circulant, build_harary, export_graph
from .oracle import graph_closeness, residual_closeness
from .verify import (
    QUANTITIES,
    SweepConfig,
    emit_report,
    parse_range,
    single_cell_report,
    sweep,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _fmt(x) -> str:
    return "" if x is None else format(float(x), ".17g")


def _metric(args: argparse.Namespace, quantity: str) -> tuple[str, int]:
    params = HararyParams(args.k, args.n)
    rule = DiameterRule(args.diameter_rule)
    if args.format == "csv":
        cfg = SweepConfig(quantities=(quantity,), diameter_rule=rule)
        return emit_report(single_cell_report(params, cfg), "csv"), EXIT_OK

    formula = oracle = None
    if args.method in ("formula", "both"):
        formula = {
            "closeness": closeness_formula,
            "residual": residual_formula,
            "diameter": diameter_formula,
        }[quantity](params, rule)
    if args.method in ("oracle", "both"):
        g = build_harary(params)
        if quantity == "closeness":
            oracle = graph_closeness(g).total
        elif quantity == "residual":
            oracle = residual_closeness(g).r_value
        else:
            oracle = float(graph_stats(g).diameter)

    if args.format == "json":
        doc = {"k": params.k, "n": params.n, "quantity": quantity, "method": args.method}
        if formula is not None:
            doc["coverage"] = formula.coverage.value
            doc["theorem_id"] = formula.trace.theorem_id
            doc["formula_value"] = formula.value
            doc["trace"] = formula.trace.as_dict()
        if oracle is not None:
            doc["oracle_value"] = oracle
        if formula is not None and oracle is not None and formula.covered:
            doc["abs_diff"] = abs(formula.value - oracle)
        return json.dumps(doc, indent=2) + "\n", EXIT_OK

    if args.method == "oracle":
        return _fmt(oracle) + "\n", EXIT_OK
    shown = _fmt(formula.value) if formula.covered else "NotCovered"
    if args.method == "formula":
        return shown + "\n", EXIT_OK
    lines = [
        f"{quantity} of H({params.k},{params.n})",
        f"  theorem  {formula.trace.theorem_id}",
        f"  formula  {shown}",
        f"  oracle   {_fmt(oracle)}",
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def _gen(args: argparse.Namespace) -> tuple[str, int]:
    if args.l is not None:
        if args.k is not None:
            raise UsageError("give either --k (Harary) or --l (circulant), not both")
        g = build_circulant(args.n, args.l)
    elif args.k is not None:
        g = build_harary(HararyParams(args.k, args.n))
    else:
        raise UsageError("gen needs --k or --l")
    return export_graph(g, args.format), EXIT_OK


def _report_exit(report) -> int:
    return EXIT_MISMATCH if report.mismatches else EXIT_OK


def _sweep(args: argparse.Namespace) -> tuple[str, int]:
    quantities = tuple(q for q in args.quantities.split(",") if q)
    cfg = SweepConfig(
        k_range=parse_range(args.k_range),
        n_range=parse_range(args.n_range),
        tolerance=args.tolerance,
        quantities=quantities,
        jobs=args.jobs,
        diameter_rule=DiameterRule(args.diameter_rule),
        allow_large=args.allow_large,
    )
    report = sweep(cfg)
    return emit_report(report, args.format), _report_exit(report)


def _verify(args: argparse.Namespace) -> tuple[str, int]:
    cfg = SweepConfig(tolerance=args.tolerance, diameter_rule=DiameterRule(args.diameter_rule))
    report = single_cell_report(HararyParams(args.k, args.n), cfg)
    return emit_report(report, args.format), _report_exit(report)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harary", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rule_flag(p):
        p.add_argument(
            "--diameter-rule",
            choices=[r.value for r in DiameterRule],
            default=DiameterRule.EXACT.value,
            help="diameter rule for odd k > 3, odd n (default: exact)",
        )

    gen = sub.add_parser("gen", help="emit H(k, n) or the circulant C(n, [l])")
    gen.add_argument("--k", type=int)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--l", type=int)
    gen.add_argument("--format", choices=["edgelist", "dot", "json"], default="edgelist")
    gen.add_argument("--out")
    gen.set_defaults(run=_gen)

    for name in ("closeness", "residual", "diameter"):
        p = sub.add_parser(name, help=f"{name} of H(k, n) by formula and/or oracle")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--method", choices=["formula", "oracle", "both"], default="both")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--out")
        rule_flag(p)
        p.set_defaults(run=lambda a, q=name: _metric(a, q))

    sw = sub.add_parser("sweep", help="differential sweep over k and n ranges")
    sw.add_argument("--k-range", default="2:12", help="inclusive lo:hi (default 2:12)")
    sw.add_argument("--n-range", default="5:64", help="inclusive lo:hi (default 5:64)")
    sw.add_argument("--quantities", default=",".join(QUANTITIES))
    sw.add_argument("--tolerance", type=float, default=1e-9)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--format", choices=["csv", "json"], default="csv")
    sw.add_argument("--allow-large", action="store_true", help="lift the 10^6 cell budget")
    sw.add_argument("--out")
    rule_flag(sw)
    sw.set_defaults(run=_sweep)

    ver = sub.add_parser("verify", help="compare every closed form with the oracle on one H(k, n)")
    ver.add_argument("--k", type=int, required=True)
    ver.add_argument("--n", type=int, required=True)
    ver.add_argument("--tolerance", type=float, default=1e-9)
    ver.add_argument("--format", choices=["csv", "json"], default="csv")
    ver.add_argument("--out")
    rule_flag(ver)
    ver.set_defaults(run=_verify)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, status = args.run(args)
    except (UsageError, ParameterError) as exc:
        print(f"harary: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
