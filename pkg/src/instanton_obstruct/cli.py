"""Command-line entry point.

Exit codes: 0 success or Obstructed, 1 Inconclusive, 2 input error.
Tables are tab-separated with ``#`` header lines; ``--json`` emits the same
numbers as a JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .cs_q import HomotopyS3xS1, ProductYxS1
from .errors import JobSpecError, ObstructError
from .example_sweep import sweep_example
from .filtered_complex import FilteredComplex, cohomology
from .jobspec import JobSpec, load_jobspec
from .levels import INF, format_level, parse_level
from .obstruction import FROYSHOV, AssumptionSet, NonvanishingAssumed, embedding_verdict
from .seifert_flat import (
    SeifertData,
    build_filtered_generators,
    cs_trivial,
    enumerate_flat_connections,
    r_invariant,
    validate_seifert,
)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT = 2


def _emit_table(out: TextIO, header: Sequence[str], rows: Sequence[Sequence[object]], preamble: Sequence[str] = ()) -> None:
    for line in preamble:
        out.write(f"# {line}\n")
    out.write("\t".join(header) + "\n")
    for row in rows:
        out.write("\t".join(str(v) for v in row) + "\n")


def _emit_json(out: TextIO, payload: object) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _target(args: argparse.Namespace) -> SeifertData | FilteredComplex:
    if getattr(args, "input", None):
        if args.multiplicities:
            raise JobSpecError("give either multiplicities or --input, not both")
        return load_jobspec(args.input).y
    if not args.multiplicities:
        raise JobSpecError("no target manifold: pass multiplicities or --input")
    return validate_seifert(args.multiplicities)


def _seifert_target(args: argparse.Namespace) -> SeifertData:
    y = _target(args)
    if not isinstance(y, SeifertData):
        raise JobSpecError(f"'{args.command}' needs Seifert multiplicities")
    return y


def cmd_flat(args: argparse.Namespace, out: TextIO) -> int:
    y = _seifert_target(args)
    conns = enumerate_flat_connections(y)
    rows = [
        (c.id, ",".join(map(str, c.rotation_numbers)), c.e_label, format_level(c.cs_value), c.grading)
        for c in conns
    ]
    if args.json:
        _emit_json(out, {
            "manifold": y.label(),
            "a": y.a,
            "connections": [
                {"id": r[0], "rotation_numbers": list(c.rotation_numbers), "e": r[2], "cs": r[3], "grading": r[4]}
                for r, c in zip(rows, conns)
            ],
        })
    else:
        _emit_table(out, ("id", "rotation", "e", "cs", "grading"), rows, [f"{y.label()}  a={y.a}  connections={len(conns)}"])
    return EXIT_OK


def cmd_cs(args: argparse.Namespace, out: TextIO) -> int:
    y = _seifert_target(args)
    rows = [("theta", format_level(cs_trivial(y)))]
    rows += [(c.id, format_level(c.cs_value)) for c in enumerate_flat_connections(y)]
    if args.json:
        _emit_json(out, {"manifold": y.label(), "cs": {k: v for k, v in rows}})
    else:
        _emit_table(out, ("id", "cs"), rows, [f"{y.label()}  cs = -e^2/(4a) mod 1"])
    return EXIT_OK


def cmd_grading(args: argparse.Namespace, out: TextIO) -> int:
    y = _seifert_target(args)
    rows = [(c.id, c.e_label, r_invariant(y, c.e_label), c.grading) for c in enumerate_flat_connections(y)]
    if args.json:
        _emit_json(out, {
            "manifold": y.label(),
            "gradings": [{"id": i, "e": e, "R": R, "grading": g} for i, e, R, g in rows],
        })
    else:
        _emit_table(out, ("id", "e", "R", "grading"), rows, [f"{y.label()}  grading = R(e) mod 8"])
    return EXIT_OK


def cmd_homology(args: argparse.Namespace, out: TextIO) -> int:
    y = _target(args)
    c = y if isinstance(y, FilteredComplex) else build_filtered_generators(y)
    r = parse_level(args.r) if args.r is not None else INF
    groups = [(i, cohomology(c, i, r)) for i in range(8)]
    label = y.label() if isinstance(y, SeifertData) else "explicit complex"
    if args.json:
        _emit_json(out, {
            "manifold": label,
            "r": format_level(r),
            "cohomology": [{"degree": i, "rank": g.rank, "torsion": list(g.torsion)} for i, g in groups],
        })
    else:
        rows = [(i, g.rank, ",".join(map(str, g.torsion)) or "-", str(g)) for i, g in groups]
        _emit_table(out, ("degree", "rank", "torsion", "group"), rows, [f"{label}  HF^i_r  r={format_level(r)}"])
    return EXIT_OK


def _job_from_args(args: argparse.Namespace) -> JobSpec:
    if args.input:
        if args.multiplicities:
            raise JobSpecError("give either multiplicities or --input, not both")
        job = load_jobspec(args.input)
        assumptions = job.assumptions
        if args.assume_froyshov:
            assumptions = AssumptionSet(NonvanishingAssumed(FROYSHOV), assumptions.nondegeneracy_asserted)
        r = parse_level(args.r) if args.r is not None else job.r
        return JobSpec(job.y, job.x, assumptions, "obstruct", r)
    y = _target(args)
    if args.x == "homotopy-s3xs1":
        x = HomotopyS3xS1()
    else:
        x = ProductYxS1(validate_seifert(args.x_seifert) if args.x_seifert else y)
    theta = NonvanishingAssumed(FROYSHOV) if args.assume_froyshov else None
    r = parse_level(args.r) if args.r is not None else None
    return JobSpec(y, x, AssumptionSet(theta, nondegeneracy_asserted=False), "obstruct", r)


def cmd_obstruct(args: argparse.Namespace, out: TextIO) -> int:
    job = _job_from_args(args)
    report = embedding_verdict(job.y, job.x, job.assumptions, r=job.r, diagnostic_infinity=args.diagnostic_inf)
    if args.json:
        _emit_json(out, report.to_dict())
    else:
        preamble = [
            f"target: {report.target}",
            f"model: {report.model}",
            f"l_Y: {report.l_y}",
            f"Q: {report.q}",
            f"r_max: {format_level(report.r_max)}",
            "excluded: " + (", ".join(format_level(v) for v in report.excluded) or "-"),
            "axioms: " + ("; ".join(report.axioms) or "-"),
            f"verdict: {report.verdict}",
        ]
        if report.reasons:
            preamble.append("reasons: " + ", ".join(report.reasons))
        rows = []
        for t in report.tested_r + report.diagnostics:
            d = t.to_dict()
            rows.append((d["r"], d["status"], d.get("method", d.get("reason", "")), d.get("detail", "")))
        _emit_table(out, ("r", "status", "method_or_reason", "detail"), rows, preamble)
    return EXIT_OK if report.verdict == "Obstructed" else EXIT_INCONCLUSIVE


def cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    try:
        result = sweep_example(args.k_min, args.k_max)
    except ValueError as exc:
        raise JobSpecError(str(exc)) from None
    if args.json:
        _emit_json(out, result.to_dict())
    else:
        rows = [
            (
                row.k,
                ",".join(map(str, row.multiplicities)),
                row.connections,
                "all-odd" if row.parity_ok else f"{row.even}-even",
                row.verdict,
                row.to_dict()["r"] or "-",
            )
            for row in result.rows
        ]
        first = result.first_parity_failure
        _emit_table(
            out,
            ("k", "multiplicities", "connections", "parity", "verdict", "r"),
            rows,
            [
                "Sigma(2,3,6k-1) vs homotopy S^3 x S^1, axiom: theta-nonvanishing (Froyshov)",
                f"first parity failure: {first if first is not None else 'none'}",
            ],
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="instanton-obstruct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def target_args(p: argparse.ArgumentParser, allow_input: bool = True) -> None:
        p.add_argument("multiplicities", nargs="*", type=int, help="Seifert multiplicities a1 a2 a3")
        if allow_input:
            p.add_argument("--input", help="JSON job file supplying the target")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    for name, help_ in (
        ("flat", "irreducible flat connections with cs and grading"),
        ("cs", "Chern-Simons values"),
        ("grading", "Floer gradings from the R-invariant"),
    ):
        target_args(sub.add_parser(name, help=help_))

    p = sub.add_parser("homology", help="filtered cohomology HF^i_r")
    target_args(p)
    p.add_argument("--r", help="filtration level p/q or inf (default inf)")

    p = sub.add_parser("obstruct", help="embedding obstruction verdict")
    target_args(p)
    # explicit cover data only arrives through --input
    p.add_argument("--x", choices=("homotopy-s3xs1", "product"), default="homotopy-s3xs1")
    p.add_argument("--x-seifert", nargs="+", type=int, help="Y' for --x product (default: the target)")
    p.add_argument("--r", help="test this level only")
    p.add_argument("--assume-froyshov", action="store_true", help="assume [theta] != 0 in HF^1")
    p.add_argument("--diagnostic-inf", action="store_true", help="also report the unfiltered r = inf check")

    p = sub.add_parser("sweep-example", help="Sigma(2,3,6k-1) regression sweep")
    p.add_argument("k_min", type=int)
    p.add_argument("k_max", type=int)
    p.add_argument("--json", action="store_true")
    return parser


COMMANDS = {
    "flat": cmd_flat,
    "cs": cmd_cs,
    "grading": cmd_grading,
    "homology": cmd_homology,
    "obstruct": cmd_obstruct,
    "sweep-example": cmd_sweep,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (ObstructError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
