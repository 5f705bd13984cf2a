"""Markov bases: connectivity test, minimal extraction, universal basis, S(A).

The Markov property is verified on the finite degree set {A v+ : v in the
Graver basis of A}: any two tables in a fiber differ by a kernel vector,
which decomposes conformally into Graver elements, and each Graver step is
realized inside the fiber of its own degree.  Connecting those fibers with
the candidate moves therefore suffices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graver import graver_basis_vectors
from .lattice import (
    Fiber,
    Matrix,
    Vector,
    as_matrix,
    fiber_enumerate,
    has_semiconformal_decomposition,
    mat_vec,
    norm1,
    sign_canonical,
    vec_neg,
    vec_pos,
)


@dataclass(frozen=True)
class BasisSet:
    """A canonical (sign-normalized, sorted, deduplicated) set of moves."""

    kind: str  # graver | markov_minimal | markov_universal | semiconformal_free
    matrix_id: str
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        canon = tuple(sorted({sign_canonical(v) for v in self.vectors}))
        if canon != self.vectors:
            object.__setattr__(self, "vectors", canon)

    def __len__(self) -> int:
        return len(self.vectors)

    def max_norm1(self) -> int:
        return max((norm1(v) for v in self.vectors), default=0)


def matrix_id(m: Matrix) -> str:
    return f"{len(m)}x{len(m[0]) if m else 0}"


class MarkovValidationError(RuntimeError):
    """A universal-basis cross-check failed; the result is not returned."""


def graver_basis(m, max_elements: int | None = None, checkpoint=None) -> BasisSet:
    m = as_matrix(m)
    vecs = graver_basis_vectors(m, max_elements=max_elements, checkpoint=checkpoint)
    return BasisSet("graver", matrix_id(m), tuple(vecs))


def _graver_degrees(m: Matrix, g: BasisSet) -> list[Vector]:
    return sorted({mat_vec(m, vec_pos(v)) for v in g.vectors})


def _connected(points: tuple[Vector, ...], moves) -> bool:
    if len(points) <= 1:
        return True
    index = {p: i for i, p in enumerate(points)}
    signed = [v for u in moves for v in (u, vec_neg(u))]
    seen = [False] * len(points)
    seen[0] = True
    queue = deque([points[0]])
    reached = 1
    while queue:
        x = queue.popleft()
        for v in signed:
            y = tuple(a + b for a, b in zip(x, v))
            j = index.get(y)
            if j is not None and not seen[j]:
                seen[j] = True
                reached += 1
                queue.append(y)
    return reached == len(points)


def is_markov_basis(
    cand,
    m,
    g: BasisSet,
    max_fiber_points: int | None = None,
    _fibers: dict[Vector, Fiber] | None = None,
) -> bool:
    """Do the candidate moves connect every fiber of the Graver degrees?"""
    m = as_matrix(m)
    moves = list(cand.vectors if isinstance(cand, BasisSet) else cand)
    for v in moves:
        if any(x != 0 for x in mat_vec(m, v)):
            raise ValueError(f"candidate move {v} is not in the kernel")
    for b in _graver_degrees(m, g):
        if _fibers is not None and b in _fibers:
            fiber = _fibers[b]
        else:
            fiber = fiber_enumerate(m, b, max_points=max_fiber_points)
            if _fibers is not None:
                _fibers[b] = fiber
        if not _connected(fiber.points, moves):
            return False
    return True


def minimal_markov_basis(
    m,
    g: BasisSet | None = None,
    max_elements: int | None = None,
    max_fiber_points: int | None = None,
) -> BasisSet:
    """Greedy inclusion-minimal Markov basis extracted from the Graver basis.

    Elements are dropped in descending (1-norm, lex) order whenever removal
    keeps the connectivity test true.  Different minimal bases exist; this
    one is pinned for reproducibility.
    """
    m = as_matrix(m)
    if g is None:
        g = graver_basis(m, max_elements=max_elements)
    fibers: dict[Vector, Fiber] = {}
    current = list(g.vectors)
    for v in sorted(g.vectors, key=lambda u: (norm1(u), u), reverse=True):
        trial = [u for u in current if u != v]
        if is_markov_basis(trial, m, g, max_fiber_points=max_fiber_points,
                           _fibers=fibers):
            current = trial
    return BasisSet("markov_minimal", matrix_id(m), tuple(current))


_VALIDATE_LIMIT = 300  # full cross-checks only at desk scale


def universal_markov_basis(
    m,
    g: BasisSet | None = None,
    max_elements: int | None = None,
    max_fiber_points: int | None = None,
    validate: bool | None = None,
) -> BasisSet:
    """Union of all minimal Markov bases via fiber support-overlap components.

    For each Graver degree, the fiber is split into components of the graph
    whose edges join points with overlapping support; differences across
    distinct components are exactly the moves some minimal basis must
    contain.  Cross-checks (S(A) and the greedy minimal basis are contained,
    the result is a Markov basis) run when the instance is small enough or
    when ``validate=True`` is forced; a violation raises rather than
    returning a wrong basis.
    """
    m = as_matrix(m)
    if g is None:
        g = graver_basis(m, max_elements=max_elements)
    out: set[Vector] = set()
    for b in _graver_degrees(m, g):
        fiber = fiber_enumerate(m, b, max_points=max_fiber_points)
        points = fiber.points
        # union-find over support overlap: join all points positive at a coord
        parent = list(range(len(points)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        ncols = len(m[0])
        for c in range(ncols):
            holder = -1
            for i, p in enumerate(points):
                if p[c] > 0:
                    if holder < 0:
                        holder = i
                    else:
                        parent[find(i)] = find(holder)
        comps: dict[int, list[Vector]] = {}
        for i, p in enumerate(points):
            comps.setdefault(find(i), []).append(p)
        if len(comps) > 1:
            groups = list(comps.values())
            for gi in range(len(groups)):
                for gj in range(gi + 1, len(groups)):
                    for x in groups[gi]:
                        for y in groups[gj]:
                            out.add(sign_canonical(tuple(a - b for a, b in zip(x, y))))
    result = BasisSet("markov_universal", matrix_id(m), tuple(out))
    if validate is None:
        validate = len(g) <= _VALIDATE_LIMIT
    if validate:
        _validate_universal(result, m, g, max_fiber_points)
    return result


def _validate_universal(
    result: BasisSet, m: Matrix, g: BasisSet, max_fiber_points: int | None
) -> None:
    gset = set(g.vectors)
    if not set(result.vectors) <= gset:
        raise MarkovValidationError("universal basis not contained in Graver basis")
    s = semiconformal_free_set(m, g=g, max_fiber_points=max_fiber_points)
    if not set(s.vectors) <= set(result.vectors):
        raise MarkovValidationError("S(A) not contained in the universal basis")
    if not is_markov_basis(result, m, g, max_fiber_points=max_fiber_points):
        raise MarkovValidationError("universal basis fails the Markov property")
    mini = minimal_markov_basis(m, g=g, max_fiber_points=max_fiber_points)
    if not set(mini.vectors) <= set(result.vectors):
        raise MarkovValidationError("greedy minimal basis not inside the universal basis")


def semiconformal_free_set(
    m,
    g: BasisSet | None = None,
    max_elements: int | None = None,
    max_fiber_points: int | None = None,
    strict: bool = True,
) -> BasisSet:
    """S(A): Graver elements with no semi-conformal decomposition.

    Semi-conformality is sign-asymmetric; in strict mode (the default,
    which the complexity lower bound relies on) an element survives only if
    neither +v nor -v decomposes.  ``strict=False`` keeps v when at least
    one orientation is decomposition-free.
    """
    m = as_matrix(m)
    if g is None:
        g = graver_basis(m, max_elements=max_elements)
    keep = []
    for v in g.vectors:
        free_pos = not has_semiconformal_decomposition(
            v, m, max_fiber_points=max_fiber_points
        )[0]
        if strict:
            ok = free_pos and not has_semiconformal_decomposition(
                vec_neg(v), m, max_fiber_points=max_fiber_points
            )[0]
        else:
            ok = free_pos or not has_semiconformal_decomposition(
                vec_neg(v), m, max_fiber_points=max_fiber_points
            )[0]
        if ok:
            keep.append(v)
    return BasisSet("semiconformal_free", matrix_id(m), tuple(keep))
