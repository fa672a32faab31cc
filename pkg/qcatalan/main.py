"""
Command-line front end.

    qcatalan triangle --d 3 --rows 5
    qcatalan paths count --n 3 --m 2 --oracle
    qcatalan verify prop1 --max-rows 20 --json prop1.json

Exit codes: 0 success, 2 a verifier found a mismatch (the report is still
written), 1 usage, budget or other operational errors.
"""
import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from . import propcheck
from .oeis import oeis_lookup
from .pathlab import BoundSpec, ContactPolicy, GenPathSpec, count_bounded_enum, count_generalized_enum
from .qcomplex import (
    ChainComplex,
    build_complex,
    check_d_squared,
    check_nilpotent,
    euler_char,
    export_triplets,
    homology_ranks,
    modified_euler_char,
    modified_euler_char_at_root,
)
from .reflection import AltSumSpec, altsum_row, altsum_terms, bounded_formula
from .triangles import d_pascal_row, q_pascal_row
from .utils.config import Settings, get_settings
from .utils.dependencies import QCatalanError, UsageError
from .utils.pydantic_models import (
    AltSumResult,
    AltSumTermOut,
    CanonicalModel,
    ComplexSummary,
    HomologyEntry,
    NilpotencyResult,
    PathCountResult,
    PieceSummary,
    TriangleOutput,
    TriangleRowOut,
    VerificationReport,
    canonical_json,
)
from .utils.tracking import diag, init_tracking, set_verbose, shutdown_tracking, track_exception

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_MISMATCH = 2

INF = "inf"


class ArgumentParser(argparse.ArgumentParser):
    """argparse reports usage errors through UsageError instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Output:
    """A command's result in every format it supports."""

    def __init__(
        self,
        payload: Union[CanonicalModel, Dict[str, Any], None] = None,
        csv_rows: Optional[List[List[Any]]] = None,
        table: Optional[str] = None,
        text: Optional[str] = None,
        exit_code: int = EXIT_OK,
    ):
        self.payload = payload
        self.csv_rows = csv_rows
        self.table = table
        self.text = text
        self.exit_code = exit_code

    def json(self) -> str:
        if isinstance(self.payload, CanonicalModel):
            return self.payload.to_json()
        return canonical_json(self.payload)

    def render(self, fmt: str) -> str:
        if self.text is not None:
            return self.text
        if fmt == "csv" and self.csv_rows is not None:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerows(self.csv_rows)
            return buffer.getvalue()
        if fmt == "table" and self.table is not None:
            return self.table if self.table.endswith("\n") else self.table + "\n"
        return self.json()


# Argument types

def _bound(text: str) -> Union[int, str]:
    if text.lower() in ("inf", "infinity", "none"):
        return INF
    return _nonnegative(text)


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'")


def _int_pair(text: str) -> List[int]:
    values = _int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma separated integers, got '{text}'")
    return values


def _finite(value: Union[int, str, None]) -> Optional[int]:
    return None if value in (None, INF) else value


# Commands

def cmd_triangle(args, settings: Settings) -> Output:
    if args.rows < 1:
        raise UsageError("triangle: --rows must be at least 1")
    if args.q:
        if args.d != 2:
            raise UsageError("triangle: --q is only defined for d = 2")
        rows = [q_pascal_row(n) for n in range(args.rows)]
        payload = TriangleOutput(d=2, q=True, rows=[
            TriangleRowOut(r=n, q_entries=[p.to_pairs() for p in row]) for n, row in enumerate(rows)
        ])
        table = "\n".join(" | ".join(str(p) for p in row) for row in rows)
        return Output(payload, csv_rows=[[str(p) for p in row] for row in rows], table=table)

    rows = [d_pascal_row(args.d, r) for r in range(args.rows)]
    payload = TriangleOutput(d=args.d, rows=[
        TriangleRowOut(r=row.r, coeffs={str(e): c for e, c in row.by_exponent().items()}) for row in rows
    ])
    width = len(" ".join(str(v) for v in rows[-1].entries()))
    table = "\n".join(" ".join(str(v) for v in row.entries()).center(width).rstrip() for row in rows)
    return Output(payload, csv_rows=[row.entries() for row in rows], table=table)


def _gen3_formula(spec: GenPathSpec) -> Optional[int]:
    """Closed form for the generalized path counts that have one."""
    if spec.policy == ContactPolicy.weak and spec.m is None and spec.s is None:
        return d_pascal_row(3, spec.n).at(0)
    if spec.policy == ContactPolicy.flat_free and spec.s == 0:
        m = spec.n + 1 if spec.m is None else spec.m
        if m >= 1:
            return altsum_row(AltSumSpec(d=3, row=spec.n, base_col=0, m=m, s=0))
    return None


def cmd_paths(args, settings: Settings) -> Output:
    n = args.n
    m = _finite(args.m)
    if args.steps == "dyck":
        if args.strict or args.policy is not None:
            raise UsageError("paths count: --strict and --policy only apply to --steps gen3")
        s = 0 if args.s is None else _finite(args.s)
        formula = bounded_formula(n, n if m is None else m, n if s is None else s)
        oracle = count_bounded_enum(BoundSpec(n=n, m=m, s=s), settings.enumeration_budget) if args.oracle else None
        policy = None
    else:
        s = _finite(args.s)
        if args.strict and args.policy not in (None, ContactPolicy.strict.value):
            raise UsageError(f"paths count: --strict contradicts --policy {args.policy}")
        policy = ContactPolicy.strict if args.strict else ContactPolicy(args.policy or ContactPolicy.weak.value)
        spec = GenPathSpec(n=n, m=m, s=s, policy=policy)
        formula = _gen3_formula(spec)
        oracle = count_generalized_enum(spec, settings.enumeration_budget) if args.oracle else None
        policy = policy.value
    status = None
    if formula is not None and oracle is not None:
        status = "match" if formula == oracle else "mismatch"
    diag(f"paths count: n={n}, m={m}, s={s}, formula={formula}, oracle={oracle}")
    payload = PathCountResult(steps=args.steps, n=n, m=m, s=s, policy=policy, formula=formula, oracle=oracle, status=status)
    table = "\n".join(f"{key} {'-' if value is None else value}" for key, value in
                      (("formula", formula), ("oracle", oracle), ("status", status)))
    csv_rows = [["steps", "n", "m", "s", "policy", "formula", "oracle", "status"],
                [args.steps, n, m, s, policy, formula, oracle, status]]
    return Output(payload, csv_rows=csv_rows, table=table,
                  exit_code=EXIT_MISMATCH if status == "mismatch" else EXIT_OK)


def cmd_altsum(args, settings: Settings) -> Output:
    spec = AltSumSpec(d=args.d, row=args.row, base_col=args.col, m=args.m, s=args.s)
    terms = altsum_terms(spec)
    value = sum(t.sign * t.value for t in terms)
    payload = AltSumResult(
        d=spec.d, row=spec.row, col=spec.base_col, m=spec.m, s=spec.s, N=spec.N,
        terms=[AltSumTermOut(label=t.label, column=t.column, sign=t.sign, value=t.value) for t in terms],
        value=value,
    )
    lines = [f"{t.label:>4} col {t.column:>4} {'+' if t.sign > 0 else '-'}{t.value}" for t in terms]
    lines.append(f"value {value}")
    csv_rows = [["label", "column", "sign", "value"]] + [[t.label, t.column, t.sign, t.value] for t in terms]
    return Output(payload, csv_rows=csv_rows, table="\n".join(lines))


def _pieces(cx: ChainComplex) -> List[PieceSummary]:
    return [
        PieceSummary(
            index=i,
            degree=cx.degrees[i],
            dim=cx.dim(i),
            differential_exponent=cx.exponent(i) if i + 1 in cx.degrees else None,
        )
        for i in cx.indices
    ]


def _complex_table(summary: ComplexSummary) -> str:
    lines = [f"M={summary.M} c={summary.c} m={summary.m} s={summary.s} N={summary.N}"]
    ranks = {h.index: h.rank for h in summary.homology or []}
    for piece in summary.pieces:
        line = f"  C[{piece.index}] deg {piece.degree} dim {piece.dim}"
        if piece.differential_exponent is not None:
            line += f" --sigma^{piece.differential_exponent}-->"
        if piece.index in ranks:
            line += f" H={ranks[piece.index]}"
        lines.append(line)
    lines.append(f"euler_char {summary.euler_char}")
    if summary.d_squared is not None:
        lines.append(f"d_squared_zero {summary.d_squared}")
    if summary.qchi is not None:
        lines.append(f"qchi[{summary.f}] {summary.qchi}")
    return "\n".join(lines)


def cmd_complex(args, settings: Settings) -> Output:
    action = args.action
    if action == "nilpotent":
        if args.N is None:
            raise UsageError("complex nilpotent: --N is required")
        result = NilpotencyResult(M=args.M, N=args.N, nilpotent=check_nilpotent(args.M, args.N, settings.matrix_budget))
        return Output(result, csv_rows=[["M", "N", "nilpotent"], [result.M, result.N, result.nilpotent]],
                      table=f"sigma^{args.N} == 0 on M={args.M}: {result.nilpotent}")
    if args.c is None:
        raise UsageError(f"complex {action}: --c is required")

    cx = build_complex(args.M, args.c, args.m, args.s, settings.matrix_budget)
    if action == "export":
        if args.index is None:
            raise UsageError("complex export: --index is required")
        matrix = cx.differential(args.index)
        if matrix is None:
            raise UsageError(f"complex export: no differential leaves index {args.index}")
        return Output(text=export_triplets(matrix))

    summary = ComplexSummary(M=args.M, c=args.c, m=args.m, s=args.s, N=cx.N, pieces=_pieces(cx), euler_char=euler_char(cx))
    if action == "build":
        summary.d_squared = check_d_squared(cx)
    elif action == "homology":
        summary.homology = [HomologyEntry(index=i, rank=r) for i, r in homology_ranks(cx, settings.rank_max_generators)]
    elif action == "qchi":
        f = propcheck.parse_exponent_fn(args.f)
        poly = modified_euler_char(args.M, args.c, args.m, args.s, f)
        summary.f = f.label
        summary.qchi = poly.to_pairs()
        summary.qchi_at_one = poly.eval_at_one()
        summary.qchi_at_root = modified_euler_char_at_root(args.M, args.c, args.m, args.s, f).coeff_strings()
    csv_rows = [["index", "degree", "dim", "differential_exponent"]] + [
        [p.index, p.degree, p.dim, p.differential_exponent] for p in summary.pieces
    ]
    return Output(summary, csv_rows=csv_rows, table=_complex_table(summary))


def cmd_qchi(args, settings: Settings) -> Output:
    args.action = "qchi"
    return cmd_complex(args, settings)


def _report_table(report: VerificationReport) -> str:
    lines = [f"{report.proposition}: {report.mismatch_count} mismatches, {report.out_of_family_count} out-of-family"]
    for group in report.summary:
        lines.append(f"  {group.group:<28} {group.clause:<22} match {group.match} mismatch {group.mismatch} "
                     f"out-of-family {group.out_of_family}")
    for cell in report.counterexamples[:20]:
        lines.append(f"  counterexample {cell.group} {cell.params} expected {cell.expected} got {cell.actual}")
    return "\n".join(lines)


def _path_bound(args) -> int:
    """prop3 and paths sweep path lengths; --max-rows and --max-n both bound them."""
    if args.max_rows is not None and args.max_n is not None and args.max_rows != args.max_n:
        raise UsageError(f"verify {args.target}: --max-rows {args.max_rows} and --max-n {args.max_n} disagree")
    bound = args.max_n if args.max_n is not None else args.max_rows
    return 8 if bound is None else bound


def cmd_verify(args, settings: Settings) -> Output:
    common = {"jobs": settings.jobs, "include_cells": args.cells, "timings": args.timings}
    if args.target in ("prop1", "prop2") and args.max_n is not None:
        raise UsageError(f"verify {args.target}: sweeps triangle rows, use --max-rows")
    if args.target != "prop2" and args.max_rows_d4 is not None:
        raise UsageError("verify: --max-rows-d4 only applies to prop2")
    if args.target == "prop1":
        report = propcheck.verify_prop1(args.max_rows or 20, **common)
    elif args.target == "prop2":
        report = propcheck.verify_prop2(args.max_rows or 20, args.max_rows_d4, **common)
    elif args.target == "prop3":
        report = propcheck.verify_prop3(_path_bound(args), **common)
    else:
        report = propcheck.verify_generalized_paths(_path_bound(args), args.max_m, settings.enumeration_budget, **common)
    exit_code = EXIT_MISMATCH if report.mismatch_count else EXIT_OK
    csv_rows = [["group", "clause", "match", "mismatch", "out_of_family"]] + [
        [g.group, g.clause, g.match, g.mismatch, g.out_of_family] for g in report.summary
    ]
    if args.json:
        path = Path(args.json)
        path.write_text(report.to_json(), encoding="utf-8")
        diag(f"verify {args.target}: report written to {path}")
        return Output(text=_report_table(report) + "\n", exit_code=exit_code)
    return Output(report, csv_rows=csv_rows, table=_report_table(report), exit_code=exit_code)


def cmd_scan(args, settings: Settings) -> Output:
    partition = None
    if args.partition is not None:
        lower_part, upper_part = args.partition
        if lower_part < 1 or upper_part < 1 or lower_part + upper_part != args.N:
            raise UsageError(f"scan: --partition a,b needs a, b >= 1 and a + b = N = {args.N}")
        partition = (upper_part - 1, lower_part - 1)
    result = propcheck.scan_exponents(
        args.N, partition, tuple(args.A_range), tuple(args.B_range), args.max_n, jobs=settings.jobs
    )
    result.candidates = [c for pos, c in enumerate(result.candidates) if c.rank == 1 or pos < args.limit]
    lines = [f"N={result.N} max_n={result.max_n} partitions (m,s)={result.partitions}"]
    lines += [f"  #{c.rank:<3} A={c.A:>3} B={c.B:>3} m={c.m} s={c.s} defect {c.defect} misses {c.misses} "
              f"e={c.family_shift} q=1 {c.values_at_one}" for c in result.candidates]
    csv_rows = [["rank", "A", "B", "m", "s", "defect", "misses", "family_shift", "fibonacci_type"]] + [
        [c.rank, c.A, c.B, c.m, c.s, c.defect, c.misses, c.family_shift, c.fibonacci_type] for c in result.candidates
    ]
    return Output(result, csv_rows=csv_rows, table="\n".join(lines))


def cmd_oeis(args, settings: Settings) -> Output:
    result = oeis_lookup(args.terms, settings)
    payload = dict(result)
    if result["success"]:
        payload["data"] = [match.model_dump() for match in result["data"]]
        rows = [[match.id, match.name] for match in result["data"]]
        table = "\n".join(f"{match.id} {match.name}" for match in result["data"]) or "no matches"
    else:
        rows = [["skipped", result["error"]]]
        table = f"lookup skipped: {result['error']}"
    return Output(payload, csv_rows=rows, table=table)


# Parser

def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser
    common = ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key=value settings file")
    common.add_argument("--enumeration-budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--matrix-budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--offline", action="store_true", default=argparse.SUPPRESS,
                        help="never query the OEIS over the network")
    return common


def build_parser() -> ArgumentParser:
    common = _common_flags()
    parser = ArgumentParser(prog="qcatalan", description="Exact finitized Catalan numbers", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangle", parents=[common], help="d-Pascal or q-Pascal rows")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--q", action="store_true", help="q-binomial rows (d = 2)")
    p.set_defaults(handler=cmd_triangle)

    p = sub.add_parser("paths", parents=[common], help="path counts")
    p.add_argument("action", choices=["count"])
    p.add_argument("--n", type=_nonnegative, required=True)
    p.add_argument("--m", type=_bound, default=INF)
    p.add_argument("--s", type=_bound, default=None)
    p.add_argument("--steps", choices=["dyck", "gen3"], default="dyck")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--policy", choices=[c.value for c in ContactPolicy], help="gen3 contact policy, weak by default")
    p.add_argument("--oracle", action="store_true", help="also count by exhaustive enumeration")
    p.set_defaults(handler=cmd_paths)

    p = sub.add_parser("altsum", parents=[common], help="reflection alternating sum on a triangle row")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--row", type=_nonnegative, required=True)
    p.add_argument("--col", type=int, default=0)
    p.add_argument("--m", type=_nonnegative, required=True)
    p.add_argument("--s", type=_nonnegative, default=0)
    p.set_defaults(handler=cmd_altsum)

    def complex_flags(p: argparse.ArgumentParser):
        p.add_argument("--M", type=int, required=True)
        p.add_argument("--c", type=int)
        p.add_argument("--m", type=_nonnegative, default=0)
        p.add_argument("--s", type=_nonnegative, default=0)
        p.add_argument("--f", default="zero", help="pentagonal|rr14|rr23|zero|one_plus:N|custom:A,B")

    p = sub.add_parser("complex", parents=[common], help="quantum exterior algebra complexes")
    p.add_argument("action", choices=["build", "euler", "homology", "qchi", "export", "nilpotent"])
    complex_flags(p)
    p.add_argument("--index", type=int, help="differential to export")
    p.add_argument("--N", type=int, help="root of unity order for nilpotent")
    p.set_defaults(handler=cmd_complex)

    p = sub.add_parser("qchi", parents=[common], help="modified Euler characteristic")
    complex_flags(p)
    p.set_defaults(handler=cmd_qchi)

    p = sub.add_parser("verify", parents=[common], help="proposition verifiers")
    p.add_argument("target", choices=["prop1", "prop2", "prop3", "paths"])
    p.add_argument("--max-rows", type=int)
    p.add_argument("--max-rows-d4", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--json", help="write the report to this file")
    p.add_argument("--cells", action="store_true", help="include every cell in the report")
    p.add_argument("--timings", action="store_true", help="include runtime statistics")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="exponent function scan")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--partition", type=_int_pair, help="a,b meaning (s+1)+(m+1)")
    p.add_argument("--A-range", type=int, nargs=2, metavar=("LO", "HI"), default=[-10, 10])
    p.add_argument("--B-range", type=int, nargs=2, metavar=("LO", "HI"), default=[-10, 10])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("oeis", parents=[common], help="look up terms on the OEIS")
    p.add_argument("--terms", type=_int_list, required=True)
    p.set_defaults(handler=cmd_oeis)
    return parser


def settings_from_args(args) -> Settings:
    return get_settings(
        getattr(args, "config", None),
        enumeration_budget=getattr(args, "enumeration_budget", None),
        matrix_budget=getattr(args, "matrix_budget", None),
        output_format=getattr(args, "format", None),
        jobs=getattr(args, "jobs", None),
        verbose=True if getattr(args, "verbose", False) else None,
        oeis_offline=True if getattr(args, "offline", False) else None,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        settings = settings_from_args(args)
        set_verbose(settings.verbose)
        init_tracking(settings.posthog_key, settings.posthog_host)
        diag(f"run(): {' '.join(argv)}")
        output = args.handler(args, settings)
        sys.stdout.write(output.render(settings.output_format))
        return output.exit_code
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_OK
    except QCatalanError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        track_exception(e, {"argv": argv, "exit_code": e.exit_code})
        return e.exit_code
    except (ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except Exception as e:
        print(f"error: unexpected {type(e).__name__}: {e}", file=sys.stderr)
        track_exception(e, {"argv": argv})
        return EXIT_FAILURE
    finally:
        shutdown_tracking()


def main():
    sys.exit(run())
