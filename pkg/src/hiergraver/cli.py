"""Command-line interface.

Exit codes: 0 success, 1 value mismatch (table driver), 2 parse error,
3 dimension mismatch, 4 resource cap exceeded (partial output kept with a
``.partial`` suffix), 5 precondition violation.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io as _stdio
import os
import sys
from pathlib import Path

from . import CANONICAL_ORDER_VERSION, __version__
from .complexes import ComplexError, parse_complex, render
from .complexity import ResourceCaps, model_complexities
from .io import (
    basis_vectors_sorted,
    parse_matrix,
    read_report_file,
    render_matrix,
    write_labels_file,
    write_matrix_file,
    write_report_file,
)
from .lattice import CapExceeded
from .markov import graver_basis, minimal_markov_basis, universal_markov_basis
from .modelmatrix import DimsError, build_model_matrix
from .table_data import SUITES

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_DIMS = 3
EXIT_CAP = 4
EXIT_PRECONDITION = 5

JOBS_ENV_VAR = "HIERGRAVER_JOBS"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad dims {text!r}: {exc}")
    return dims


def _parse_complex_arg(text: str):
    try:
        return parse_complex(text)
    except ComplexError as exc:
        raise CliError(EXIT_PARSE, f"bad complex {text!r}: {exc}")


def _build_matrix_arg(args):
    if args.matrix is not None:
        try:
            return parse_matrix(Path(args.matrix).read_text())
        except (OSError, ValueError) as exc:
            raise CliError(EXIT_PARSE, f"cannot read matrix {args.matrix}: {exc}")
    delta = _parse_complex_arg(args.complex)
    dims = _parse_dims(args.dims)
    try:
        return build_model_matrix(delta, dims).entries
    except DimsError as exc:
        raise CliError(EXIT_DIMS, str(exc))


def _caps_from(args) -> ResourceCaps:
    return ResourceCaps(
        max_basis_elements=args.max_basis_elements,
        max_fiber_points=args.max_fiber_points,
        max_r=args.max_r,
        time_limit_s=args.time_limit,
    )


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-basis-elements", type=int, default=None)
    p.add_argument("--max-fiber-points", type=int, default=None)
    p.add_argument("--max-r", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None)


def cmd_matrix(args) -> int:
    delta = _parse_complex_arg(args.complex)
    dims = _parse_dims(args.dims)
    try:
        mm = build_model_matrix(delta, dims)
    except DimsError as exc:
        raise CliError(EXIT_DIMS, str(exc))
    write_matrix_file(args.out, mm.entries)
    write_labels_file(str(args.out) + ".labels", mm.row_labels, mm.col_labels)
    print(f"wrote {mm.rows}x{mm.cols} matrix for {render(delta)} to {args.out}")
    return EXIT_OK


def _basis_command(args, compute) -> int:
    m = _build_matrix_arg(args)
    caps = _caps_from(args)
    try:
        basis = compute(m, caps)
    except CapExceeded as exc:
        if exc.partial:
            write_matrix_file(
                str(args.out) + ".partial", basis_vectors_sorted(exc.partial)
            )
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc))
    rows = basis_vectors_sorted(basis.vectors)
    if rows:
        write_matrix_file(args.out, rows)
    else:
        write_matrix_file(args.out, ())
    print(f"wrote {len(rows)} vectors to {args.out}")
    return EXIT_OK


def cmd_graver(args) -> int:
    return _basis_command(
        args, lambda m, caps: graver_basis(m, max_elements=caps.max_basis_elements)
    )


def _require_fiber_ready(m) -> None:
    if any(x < 0 for row in m for x in row):
        raise CliError(EXIT_PRECONDITION, "matrix must be nonnegative")
    if m and any(all(row[c] == 0 for row in m) for c in range(len(m[0]))):
        raise CliError(EXIT_PRECONDITION, "matrix must have no zero column")


def cmd_markov(args) -> int:
    def compute(m, caps):
        _require_fiber_ready(m)
        return minimal_markov_basis(
            m,
            max_elements=caps.max_basis_elements,
            max_fiber_points=caps.max_fiber_points,
        )

    return _basis_command(args, compute)


def cmd_universal(args) -> int:
    def compute(m, caps):
        _require_fiber_ready(m)
        return universal_markov_basis(
            m,
            max_elements=caps.max_basis_elements,
            max_fiber_points=caps.max_fiber_points,
        )

    return _basis_command(args, compute)


def _report_payload(rep, with_timings: bool) -> dict:
    def gamma(w):
        if w is None:
            return None
        return {"columns": [list(c) for c in w.columns], "counts": list(w.counts)}

    witnesses = {
        "graver": gamma(rep.graver_witness),
        "lower_bound": gamma(rep.lower_bound_witness),
        "markov": (
            {"vector": list(rep.markov_witness.base), "r": rep.markov_witness.r}
            if rep.markov_witness is not None
            else None
        ),
    }
    return {
        "model": render(rep.model),
        "dims": list(rep.dims),
        "graver_complexity": rep.graver_complexity,
        "markov_complexity": rep.markov_complexity,
        "lower_bound": rep.lower_bound,
        "trivial_kernel": rep.trivial_kernel,
        "mode": rep.mode,
        "per_r_profile": [list(p) for p in rep.per_r_profile],
        "witnesses": witnesses,
        "caps": {
            "max_basis_elements": rep.caps.max_basis_elements,
            "max_fiber_points": rep.caps.max_fiber_points,
            "max_r": rep.caps.max_r,
            "time_limit_s": rep.caps.time_limit_s,
        },
        "cap_exceeded": rep.cap_exceeded,
        # timings stay null by default so identical inputs give identical bytes
        "timings": None if not with_timings else {},
        "timings_reason": "omitted for byte-identical reports" if not with_timings else None,
        "tool_version": __version__,
        "canonical_order_version": CANONICAL_ORDER_VERSION,
    }


def cmd_complexity(args) -> int:
    delta = _parse_complex_arg(args.complex)
    dims_rest = _parse_dims(args.dims_rest)
    if 1 not in delta.support:
        raise CliError(EXIT_PRECONDITION, "vertex 1 must appear in the complex")
    caps = _caps_from(args)
    try:
        rep = model_complexities(delta, dims_rest, mode=args.mode, caps=caps)
    except DimsError as exc:
        raise CliError(EXIT_DIMS, str(exc))
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    payload = _report_payload(rep, with_timings=False)
    if args.out:
        write_report_file(args.out, payload)
    print(
        f"m={rep.markov_complexity}, g={rep.graver_complexity}, lb={rep.lower_bound}"
    )
    return EXIT_CAP if rep.cap_exceeded else EXIT_OK


def _run_table_row(row, dims_rest, mode, caps, out_dir: Path):
    name, m_exp, g_exp = row
    fname = name.replace("[", "").replace("]", "-").rstrip("-")
    report_path = out_dir / f"{fname}.json"
    if report_path.exists():
        payload = read_report_file(report_path)
    else:
        delta = parse_complex(name)
        rep = model_complexities(delta, dims_rest, mode=mode, caps=caps)
        payload = _report_payload(rep, with_timings=False)
        write_report_file(report_path, payload)
    m_got = payload["markov_complexity"]
    g_got = payload["graver_complexity"]
    status = "ok" if (m_got, g_got) == (m_exp, g_exp) else "mismatch"
    return (name, m_exp, g_exp, m_got, g_got, status)


def cmd_table(args) -> int:
    suite = SUITES.get(args.suite)
    if suite is None:
        raise CliError(EXIT_PARSE, f"unknown suite {args.suite!r}")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    caps = _caps_from(args)
    dims_rest = (2, 2, 2)
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get(JOBS_ENV_VAR, "1"))
    rows = []
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_table_row, row, dims_rest, args.mode, caps, out_dir)
                for row in suite
            ]
            results = {}
            for fut in concurrent.futures.as_completed(futures):
                res = fut.result()
                results[res[0]] = res
        rows = [results[name] for name, _, _ in suite]
    else:
        for row in suite:
            rows.append(_run_table_row(row, dims_rest, args.mode, caps, out_dir))
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["model", "m_expected", "g_expected", "m_computed", "g_computed", "status"]
    )
    writer.writerows(rows)
    from .io import atomic_write_text

    atomic_write_text(out_dir / "summary.csv", buf.getvalue())
    failures = [r for r in rows if r[5] != "ok"]
    for r in rows:
        print(",".join(str(x) for x in r))
    if failures:
        print(f"{len(failures)} mismatching rows", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hiergraver",
        description="Exact Markov/Graver bases and complexities of hierarchical models",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("matrix", help="write a model margin matrix")
    pm.add_argument("--complex", required=True)
    pm.add_argument("--dims", required=True, help="d_1,d_2,...,d_n")
    pm.add_argument("--out", required=True)
    pm.set_defaults(func=cmd_matrix)

    for name, func, help_text in (
        ("graver", cmd_graver, "write a Graver basis"),
        ("markov", cmd_markov, "write a minimal Markov basis"),
        ("universal", cmd_universal, "write a universal Markov basis"),
    ):
        pb = sub.add_parser(name, help=help_text)
        src = pb.add_mutually_exclusive_group(required=True)
        src.add_argument("--matrix", default=None)
        src.add_argument("--complex", default=None)
        pb.add_argument("--dims", default=None, help="d_1,...,d_n (with --complex)")
        pb.add_argument("--out", required=True)
        _add_caps(pb)
        pb.set_defaults(func=func)

    pc = sub.add_parser("complexity", help="compute m, g and the lower bound")
    pc.add_argument("--complex", required=True)
    pc.add_argument("--dims-rest", required=True, help="d_2,...,d_n")
    pc.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    pc.add_argument("--out", default=None)
    _add_caps(pc)
    pc.set_defaults(func=cmd_complexity)

    pt = sub.add_parser("table", help="reproduce the binary four-variable table")
    pt.add_argument("--suite", choices=("core", "extended"), default="core")
    pt.add_argument("--mode", choices=("exact", "heuristic"), default="heuristic")
    pt.add_argument("--jobs", type=int, default=None)
    pt.add_argument("--out", required=True)
    _add_caps(pt)
    pt.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "complex", None) is not None and getattr(args, "matrix", "x") is None:
        if getattr(args, "dims", None) is None:
            parser.error("--dims is required with --complex")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
