"""Plain-text matrix files and JSON reports, written atomically.

MatrixFile format: a header line ``R C`` followed by R rows of C
whitespace-separated decimal integers and a trailing newline — the common
plain-matrix convention of toric-computation tools, so files interoperate.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import CANONICAL_ORDER_VERSION, __version__
from .lattice import Matrix, Vector

REPORT_SCHEMA_VERSION = 1


class MatrixParseError(ValueError):
    pass


def parse_matrix(text: str) -> Matrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixParseError(f"bad header {lines[0]!r}: expected 'R C'")
    try:
        r, c = int(head[0]), int(head[1])
    except ValueError as exc:
        raise MatrixParseError(f"bad header {lines[0]!r}") from exc
    if r < 0 or c < 0:
        raise MatrixParseError(f"negative dimensions in header {lines[0]!r}")
    if len(lines) - 1 != r:
        raise MatrixParseError(f"expected {r} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            row = tuple(int(x) for x in ln.split())
        except ValueError as exc:
            raise MatrixParseError(f"non-integer entry in row {ln!r}") from exc
        if len(row) != c:
            raise MatrixParseError(f"expected {c} entries, found {len(row)} in {ln!r}")
        rows.append(row)
    return tuple(rows)


def render_matrix(rows) -> str:
    rows = [tuple(int(x) for x in row) for row in rows]
    r = len(rows)
    c = len(rows[0]) if rows else 0
    if any(len(row) != c for row in rows):
        raise ValueError("ragged rows")
    out = [f"{r} {c}"]
    out.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(out) + "\n"


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write via a temp file in the same directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def write_matrix_file(path: str | Path, rows, verify: bool = True) -> None:
    text = render_matrix(rows)
    atomic_write_text(path, text)
    if verify:
        back = parse_matrix(Path(path).read_text())
        if back != tuple(tuple(int(x) for x in row) for row in rows):
            raise IOError(f"self-verification failed for {path}")


def write_labels_file(path: str | Path, row_labels, col_labels) -> None:
    lines = ["# rows"]
    lines.extend(f"{i}\t{lab}" for i, lab in enumerate(row_labels))
    lines.append("# cols")
    lines.extend(f"{j}\t{lab}" for j, lab in enumerate(col_labels))
    atomic_write_text(path, "\n".join(lines) + "\n")


def basis_vectors_sorted(vectors) -> list[Vector]:
    """Canonical output order for basis files: (1-norm, lex)."""
    return sorted(vectors, key=lambda v: (sum(abs(x) for x in v), v))


def report_to_json(report: dict) -> str:
    body = dict(report)
    body.setdefault("schema_version", REPORT_SCHEMA_VERSION)
    body.setdefault("tool_version", __version__)
    body.setdefault("canonical_order_version", CANONICAL_ORDER_VERSION)
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def write_report_file(path: str | Path, report: dict, verify: bool = True) -> None:
    text = report_to_json(report)
    atomic_write_text(path, text)
    if verify:
        back = json.loads(Path(path).read_text())
        if back != json.loads(text):
            raise IOError(f"self-verification failed for {path}")


def read_report_file(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())
