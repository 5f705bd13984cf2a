"""Hierarchical-model margin matrices and generalized Lawrence liftings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import EMPTY_FACE, DeletionEmptyError, SimplicialComplex, deletion, link

Matrix = tuple[tuple[int, ...], ...]


class DimsError(ValueError):
    """Table dimensions do not match the complex."""


def check_dims(dims, n: int) -> tuple[int, ...]:
    d = tuple(int(x) for x in dims)
    if len(d) != n:
        raise DimsError(f"expected {n} dimensions, got {len(d)}")
    if any(x < 2 for x in d):
        raise DimsError(f"all table dimensions must be >= 2, got {d}")
    return d


@dataclass(frozen=True)
class ModelMatrix:
    """0/1 margin matrix of a hierarchical model with canonical labels.

    Columns are table cells in lexicographic order with the first variable
    slowest.  Rows are (facet, margin index) pairs: facets containing the
    distinguished vertex come first, ordered by the distinguished margin
    index, then facet, then remaining indices; the rest follow in (facet,
    index) lexicographic order.
    """

    entries: Matrix
    row_labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    col_labels: tuple[tuple[int, ...], ...]
    vertices: tuple[int, ...]
    dims: tuple[int, ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.col_labels)


def build_model_matrix(
    delta: SimplicialComplex,
    dims,
    vertices=None,
    distinguished: int | None = 1,
) -> ModelMatrix:
    """Margin matrix of ``delta`` on the table over ``vertices`` with ``dims``.

    ``vertices`` defaults to 1..n; link/deletion matrices pass the surviving
    variables explicitly so column labels keep their original names.  The
    empty-face complex yields the single all-ones grand-total row.
    """
    if vertices is None:
        vertices = tuple(range(1, delta.n + 1))
    else:
        vertices = tuple(vertices)
    d = check_dims(dims, len(vertices))
    vset = set(vertices)
    for f in delta.facets:
        if not set(f) <= vset:
            raise DimsError(f"facet {f} uses variables outside {vertices}")
    pos = {v: i for i, v in enumerate(vertices)}
    cells = tuple(itertools.product(*(range(1, di + 1) for di in d)))

    row_labels: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    if delta.is_empty_face_complex():
        row_labels.append((EMPTY_FACE, ()))
    else:
        first = [f for f in delta.facets if distinguished in f]
        rest = [f for f in delta.facets if distinguished not in f]
        if first:
            d1 = d[pos[distinguished]]
            for e1 in range(1, d1 + 1):
                for f in first:
                    others = [v for v in f if v != distinguished]
                    for evals in itertools.product(
                        *(range(1, d[pos[v]] + 1) for v in others)
                    ):
                        margin = dict(zip(others, evals))
                        margin[distinguished] = e1
                        row_labels.append((f, tuple(margin[v] for v in f)))
        for f in rest:
            for evals in itertools.product(*(range(1, d[pos[v]] + 1) for v in f)):
                row_labels.append((f, evals))

    entries: list[tuple[int, ...]] = []
    for f, e in row_labels:
        idx = [pos[v] for v in f]
        row = tuple(
            1 if all(cell[i] == ev for i, ev in zip(idx, e)) else 0 for cell in cells
        )
        entries.append(row)
    return ModelMatrix(
        entries=tuple(entries),
        row_labels=tuple(row_labels),
        col_labels=cells,
        vertices=vertices,
        dims=d,
    )


@dataclass(frozen=True)
class LiftedMatrix:
    """r-th generalized Lawrence lifting of A with B, slice-major columns."""

    base_a: Matrix
    base_b: Matrix
    r: int
    entries: Matrix

    @property
    def n(self) -> int:
        return len(self.base_a[0]) if self.base_a else len(self.base_b[0])


def as_plain(m) -> Matrix:
    if isinstance(m, ModelMatrix):
        return m.entries
    return tuple(tuple(int(x) for x in row) for row in m)


def lawrence_lift(a, b, r: int) -> LiftedMatrix:
    """(r*d + p) x (r*n) matrix: r diagonal copies of a over r copies of b."""
    a = as_plain(a)
    b = as_plain(b)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    na = len(a[0]) if a else None
    nb = len(b[0]) if b else None
    if na is not None and nb is not None and na != nb:
        raise ValueError(f"column count mismatch: {na} vs {nb}")
    n = na if na is not None else nb
    if n is None:
        raise ValueError("both matrices are empty")
    zero = (0,) * n
    rows: list[tuple[int, ...]] = []
    for j in range(r):
        for arow in a:
            rows.append(zero * j + arow + zero * (r - 1 - j))
    for brow in b:
        rows.append(brow * r)
    return LiftedMatrix(base_a=a, base_b=b, r=r, entries=tuple(rows))


def deletion_matrix(delta: SimplicialComplex, dims_rest, vertices_rest) -> Matrix:
    """B-factor of the lifting; zero rows when every facet contains vertex 1."""
    try:
        dele = deletion(delta, 1)
    except DeletionEmptyError:
        return ()
    return build_model_matrix(dele, dims_rest, vertices=vertices_rest).entries


def lift_factors(delta: SimplicialComplex, dims_rest) -> tuple[Matrix, Matrix]:
    """(A, B) with A the link matrix and B the deletion matrix at vertex 1."""
    verts_rest = tuple(range(2, delta.n + 1))
    a = build_model_matrix(link(delta, 1), dims_rest, vertices=verts_rest).entries
    b = deletion_matrix(delta, dims_rest, verts_rest)
    return a, b


def lift_row_permutation(delta: SimplicialComplex, dims) -> tuple[int, ...]:
    """perm[i] = row of Lambda(A_link, A_del, d1) holding row i of A_Delta.

    Computed by matching row labels; with the canonical orders used here it
    is the identity, but it is derived rather than assumed.
    """
    d = check_dims(dims, delta.n)
    full = build_model_matrix(delta, d)
    link_m = build_model_matrix(
        link(delta, 1), d[1:], vertices=tuple(range(2, delta.n + 1))
    )
    try:
        del_m = build_model_matrix(
            deletion(delta, 1), d[1:], vertices=tuple(range(2, delta.n + 1))
        )
        del_labels = del_m.row_labels
    except DeletionEmptyError:
        del_labels = ()
    a_rows = len(link_m.row_labels)
    link_index = {lab: i for i, lab in enumerate(link_m.row_labels)}
    del_index = {lab: i for i, lab in enumerate(del_labels)}
    perm = []
    for f, e in full.row_labels:
        if 1 in f:
            e1 = e[f.index(1)]
            sub_f = tuple(v for v in f if v != 1)
            sub_e = tuple(ev for v, ev in zip(f, e) if v != 1)
            key = (sub_f, sub_e) if sub_f else (EMPTY_FACE, ())
            perm.append((e1 - 1) * a_rows + link_index[key])
        else:
            perm.append(d[0] * a_rows + del_index[(f, e)])
    return tuple(perm)
