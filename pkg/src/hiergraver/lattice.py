"""Exact integer linear algebra: kernels, fibers, decomposition oracles.

Everything here runs on Python integers (arbitrary precision) and tuples;
no floating point anywhere.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class CapExceeded(RuntimeError):
    """A configured resource cap was hit; results were not truncated."""

    def __init__(self, what: str, cap: int, context: str = "", partial=None):
        self.what = what
        self.cap = cap
        self.context = context
        self.partial = partial  # incomplete generator set, for .partial dumps
        super().__init__(f"{what} cap of {cap} exceeded{': ' + context if context else ''}")


def as_matrix(m) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(mi * vi for mi, vi in zip(row, v)) for row in m)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vec_pos(u: Vector) -> Vector:
    return tuple(a if a > 0 else 0 for a in u)


def vec_neg_part(u: Vector) -> Vector:
    return tuple(-a if a < 0 else 0 for a in u)


def norm1(u: Vector) -> int:
    return sum(abs(a) for a in u)


def sign_canonical(u: Vector) -> Vector:
    """The representative of {u, -u} whose first nonzero entry is positive."""
    for a in u:
        if a > 0:
            return u
        if a < 0:
            return vec_neg(u)
    return u


def conformal_leq(v: Vector, u: Vector) -> bool:
    """v is sign-compatible with u and componentwise dominated: v "divides" u."""
    for a, b in zip(v, u):
        if a > 0 and not (0 < a <= b):
            return False
        if a < 0 and not (b <= a < 0):
            return False
    return True


def is_conformal_pair(v: Vector, w: Vector) -> bool:
    """No coordinate where v and w have strictly opposite signs."""
    return all(a * b >= 0 for a, b in zip(v, w))


def kernel_lattice_basis(m) -> list[Vector]:
    """Lattice basis of the full integer kernel {x : m x = 0}.

    Integer row reduction (Hermite-normal-form style) on the transpose,
    tracking the unimodular transform; rows of the transform matched to
    zero rows of the echelon form span the saturated kernel lattice.
    """
    m = as_matrix(m)
    if not m or not m[0]:
        raise ValueError("matrix needs at least one column")
    ncols = len(m[0])
    # work rows: [column of m | unit vector]  (i.e. rows of m^T, augmented)
    work = [list(col) + [1 if j == i else 0 for j in range(ncols)]
            for i, col in enumerate(zip(*m))]
    p = len(m)  # width of the m^T part
    pivot_row = 0
    for pivot_col in range(p):
        if pivot_row >= len(work):
            break
        # euclidean elimination within this column
        while True:
            nz = [i for i in range(pivot_row, len(work)) if work[i][pivot_col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(work[i][pivot_col]))
            work[pivot_row], work[i_min] = work[i_min], work[pivot_row]
            if work[pivot_row][pivot_col] < 0:
                work[pivot_row] = [-x for x in work[pivot_row]]
            a = work[pivot_row][pivot_col]
            done = True
            for i in range(pivot_row + 1, len(work)):
                b = work[i][pivot_col]
                if b != 0:
                    q = b // a
                    work[i] = [x - q * y for x, y in zip(work[i], work[pivot_row])]
                    if work[i][pivot_col] != 0:
                        done = False
            if done:
                break
        if work[pivot_row][pivot_col] != 0:
            pivot_row += 1
    basis = [tuple(row[p:]) for row in work[pivot_row:] if all(x == 0 for x in row[:p])]
    return [sign_canonical(v) for v in basis]


@dataclass(frozen=True)
class Fiber:
    """All nonnegative integer solutions of m x = b, deduplicated and sorted."""

    matrix: Matrix
    rhs: Vector
    points: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.points)


def _check_fiber_matrix(m: Matrix) -> None:
    if not m or not m[0]:
        raise ValueError("matrix needs at least one row and column")
    for row in m:
        if any(x < 0 for x in row):
            raise ValueError("fiber enumeration requires a nonnegative matrix")
    for j in range(len(m[0])):
        if all(row[j] == 0 for row in m):
            raise ValueError(f"column {j} is zero; the fiber may be infinite")


def fiber_enumerate(m, b, max_points: int | None = None) -> Fiber:
    """Depth-first enumeration of {x >= 0 : m x = b} with residual pruning."""
    m = as_matrix(m)
    _check_fiber_matrix(m)
    b = tuple(int(x) for x in b)
    if len(b) != len(m):
        raise ValueError("rhs length does not match row count")
    if any(x < 0 for x in b):
        return Fiber(m, b, ())
    jit_points = _fiber_numba(m, b, max_points)
    if jit_points is not None:
        return Fiber(m, b, jit_points)
    ncols = len(m[0])
    # for pruning: the last column index with support in each row
    last_support = [max(j for j in range(ncols) if row[j] > 0) for row in m]
    points: list[Vector] = []
    x = [0] * ncols
    residual = list(b)

    def rec(j: int) -> None:
        if j == ncols:
            if all(r == 0 for r in residual):
                points.append(tuple(x))
                if max_points is not None and len(points) > max_points:
                    raise CapExceeded("fiber points", max_points, f"rhs={b}")
            return
        for i, row in enumerate(m):
            if residual[i] > 0 and last_support[i] < j:
                return
        bound = None
        for i, row in enumerate(m):
            if row[j] > 0:
                c = residual[i] // row[j]
                bound = c if bound is None else min(bound, c)
        for val in range(bound + 1):
            if val:
                for i, row in enumerate(m):
                    residual[i] -= row[j]
                if any(r < 0 for r in residual):
                    for i, row in enumerate(m):
                        residual[i] += row[j] * val
                    x[j] = 0
                    return
            x[j] = val
            rec(j + 1)
        for i, row in enumerate(m):
            residual[i] += row[j] * bound
        x[j] = 0

    rec(0)
    return Fiber(m, b, tuple(sorted(points)))


try:  # optional acceleration; the recursive path above is the reference
    import numba
    import numpy as np

    _HAVE_NUMBA = os.environ.get("HIERGRAVER_NO_NUMBA", "") == ""
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _fiber_jit(m, b, cap):  # pragma: no cover - exercised via wrapper
        nrows, ncols = m.shape
        residual = b.copy()
        last_support = np.empty(nrows, dtype=np.int64)
        for i in range(nrows):
            last = -1
            for j in range(ncols):
                if m[i, j] > 0:
                    last = j
            last_support[i] = last
        xval = np.zeros(ncols, dtype=np.int64)
        bound = np.zeros(ncols, dtype=np.int64)
        out = np.empty((64, ncols), dtype=np.int64)
        count = 0
        j = 0
        entering = True
        while j >= 0:
            if entering:
                if j == ncols:
                    ok = True
                    for i in range(nrows):
                        if residual[i] != 0:
                            ok = False
                            break
                    if ok:
                        if count == out.shape[0]:
                            grown = np.empty((2 * count, ncols), dtype=np.int64)
                            grown[:count] = out
                            out = grown
                        out[count] = xval
                        count += 1
                        if cap > 0 and count > cap:
                            return out[:count], -1
                    entering = False
                    j -= 1
                    continue
                dead = False
                for i in range(nrows):
                    if residual[i] > 0 and last_support[i] < j:
                        dead = True
                        break
                if dead:
                    entering = False
                    j -= 1
                    continue
                bnd = np.int64(1) << 60
                for i in range(nrows):
                    if m[i, j] > 0:
                        c = residual[i] // m[i, j]
                        if c < bnd:
                            bnd = c
                bound[j] = bnd
                xval[j] = 0
                j += 1
            else:
                v = xval[j] + 1
                if v > bound[j]:
                    for i in range(nrows):
                        residual[i] += m[i, j] * xval[j]
                    j -= 1
                else:
                    for i in range(nrows):
                        residual[i] -= m[i, j]
                    xval[j] = v
                    entering = True
                    j += 1
        return out[:count], 0


def _fiber_numba(m: Matrix, b: Vector, max_points: int | None):
    """Accelerated fiber DFS; None means 'use the pure path'."""
    if not _HAVE_NUMBA:
        return None
    if max(max(abs(x) for x in row) for row in m) > 1 << 20:
        return None
    if b and max(abs(x) for x in b) > 1 << 40:
        return None
    arr = np.array(m, dtype=np.int64)
    rhs = np.array(b, dtype=np.int64)
    pts, status = _fiber_jit(arr, rhs, max_points or 0)
    if status == -1:
        raise CapExceeded("fiber points", max_points, f"rhs={b}")
    return tuple(sorted(tuple(int(x) for x in row) for row in pts))


def iter_box(lo: Vector, hi: Vector):
    """All integer vectors lo <= v <= hi, in lexicographic order."""
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def has_conformal_decomposition(u, m, max_candidates: int | None = None):
    """Does u = v + v' split with no sign cancellation, both parts in ker m?

    Returns (flag, witness) where the witness is the pair (v, u - v) for
    the first split found in lexicographic order, or None.
    """
    m = as_matrix(m)
    u = tuple(int(x) for x in u)
    if any(x != 0 for x in mat_vec(m, u)):
        raise ValueError("u is not in the kernel")
    if all(x == 0 for x in u):
        raise ValueError("u must be nonzero")
    lo = tuple(min(x, 0) for x in u)
    hi = tuple(max(x, 0) for x in u)
    zero = (0,) * len(u)
    count = 0
    for v in iter_box(lo, hi):
        count += 1
        if max_candidates is not None and count > max_candidates:
            raise CapExceeded("conformal split candidates", max_candidates)
        if v == zero or v == u:
            continue
        if all(x == 0 for x in mat_vec(m, v)):
            return True, (v, vec_sub(u, v))
    return False, None


def has_semiconformal_decomposition(u, m, max_fiber_points: int | None = None):
    """Does u = v + v' semi-conformally split (positive entries of v bounded
    by u), both parts nonzero and in ker m?

    Enumerates candidate positive parts w with 0 <= w <= u+, then negative
    parts z from the fiber of m w with disjoint support; v = w - z.  The
    mirrored bound on v' is then automatic.  Requires m nonnegative with no
    zero columns so fibers are finite.
    """
    m = as_matrix(m)
    _check_fiber_matrix(m)
    u = tuple(int(x) for x in u)
    if any(x != 0 for x in mat_vec(m, u)):
        raise ValueError("u is not in the kernel")
    if all(x == 0 for x in u):
        raise ValueError("u must be nonzero")
    up = vec_pos(u)
    zero = (0,) * len(u)
    for w in iter_box(zero, up):
        if w == zero:
            continue
        target = mat_vec(m, w)
        fiber = fiber_enumerate(m, target, max_points=max_fiber_points)
        for z in fiber.points:
            if any(a and b for a, b in zip(w, z)):
                continue
            v = vec_sub(w, z)
            if v == u or v == zero:
                continue
            return True, (v, vec_sub(u, v))
    return False, None


@dataclass(frozen=True)
class SlicedVector:
    """Length r*n integer vector viewed as r stacked slices of width n."""

    base: Vector
    r: int
    n: int

    def __post_init__(self) -> None:
        if self.r * self.n != len(self.base):
            raise ValueError(
                f"shape mismatch: {self.r} x {self.n} != length {len(self.base)}"
            )

    def slices(self) -> tuple[Vector, ...]:
        return tuple(
            self.base[i * self.n : (i + 1) * self.n] for i in range(self.r)
        )


def type_of(u: SlicedVector) -> int:
    """Number of nonzero slices."""
    return sum(1 for s in u.slices() if any(x != 0 for x in s))
