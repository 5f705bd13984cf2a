"""Graver bases: completion algorithm, brute-force oracle, network fast path.

The default route is a Pottier-style completion: seed with a lattice basis
of the integer kernel, repeatedly form sums of pairs, reduce each sum to
conformal normal form, and keep the nonzero normal forms; a final
inter-reduction pass leaves exactly the conformally-minimal elements.

Two performance routes sit behind the same contract and are cross-checked
against the brute-force oracle in the test suite:

* a numba-compiled completion on int64 arrays (entry magnitudes are
  guarded; on overflow risk the pure-Python arbitrary-precision completion
  runs instead);
* for matrices that are signed incidence matrices of a graph (every column
  two nonzero entries, +-1, sign-consistently scalable), the Graver basis
  equals the set of simple cycles, which are enumerated directly.  This is
  the classical circuits-of-a-unimodular-matrix fact and is what makes the
  large table rows tractable.
"""

from __future__ import annotations

import itertools
import os

from .lattice import (
    CapExceeded,
    Matrix,
    Vector,
    as_matrix,
    conformal_leq,
    is_conformal_pair,
    kernel_lattice_basis,
    norm1,
    sign_canonical,
    vec_neg,
)

try:  # numba is optional; the pure path is the reference implementation
    import numba
    import numpy as np

    _HAVE_NUMBA = os.environ.get("HIERGRAVER_NO_NUMBA", "") == ""
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False

_INT64_GUARD = 1 << 40


# ---------------------------------------------------------------------------
# brute-force oracle


def kernel_vectors_in_box(m, box: int, max_count: int | None = None) -> list[Vector]:
    """All nonzero integer kernel vectors with |x_i| <= box, sorted."""
    m = as_matrix(m)
    if box < 1:
        raise ValueError("box must be >= 1")
    nrows, ncols = len(m), len(m[0])
    # max_add[i][j): largest |contribution| rows i can still pick up from cols >= j
    max_add = [[0] * (ncols + 1) for _ in range(nrows)]
    for i in range(nrows):
        for j in range(ncols - 1, -1, -1):
            max_add[i][j] = max_add[i][j + 1] + box * abs(m[i][j])
    out: list[Vector] = []
    x = [0] * ncols
    residual = [0] * nrows

    def rec(j: int) -> None:
        if j == ncols:
            if all(r == 0 for r in residual):
                if any(v != 0 for v in x):
                    out.append(tuple(x))
                    if max_count is not None and len(out) > max_count:
                        raise CapExceeded("box kernel vectors", max_count)
            return
        for i in range(nrows):
            if abs(residual[i]) > max_add[i][j]:
                return
        for val in range(-box, box + 1):
            x[j] = val
            for i in range(nrows):
                residual[i] += m[i][j] * val
            rec(j + 1)
            for i in range(nrows):
                residual[i] -= m[i][j] * val
        x[j] = 0

    rec(0)
    return sorted(out)


def graver_bruteforce(m, box: int, max_count: int | None = None) -> list[Vector]:
    """Graver basis restricted to the box: conformally-minimal kernel vectors.

    Correct whenever the true Graver basis lies inside the box; callers
    assert stability by growing the box until two sizes agree.
    """
    vectors = kernel_vectors_in_box(m, box, max_count=max_count)
    vset = set(vectors)
    minimal = []
    for u in vectors:
        reducible = False
        for v in vset:
            if v != u and conformal_leq(v, u):
                reducible = True
                break
        if not reducible:
            minimal.append(u)
    return sorted({sign_canonical(u) for u in minimal})


# ---------------------------------------------------------------------------
# pure-Python Pottier completion (arbitrary precision; reference path)


def _masks(v: Vector) -> tuple[int, int]:
    p = n = 0
    for i, a in enumerate(v):
        if a > 0:
            p |= 1 << i
        elif a < 0:
            n |= 1 << i
    return p, n


def _pottier_pure(
    seeds: list[Vector],
    max_elements: int | None,
    checkpoint=None,
) -> list[Vector]:
    g: list[Vector] = []
    pos: list[int] = []
    neg: list[int] = []
    seen: set[Vector] = set()
    for v in seeds:
        v = sign_canonical(v)
        if any(a != 0 for a in v) and v not in seen:
            seen.add(v)
            g.append(v)
            p, q = _masks(v)
            pos.append(p)
            neg.append(q)

    def normal_form(s: Vector) -> Vector:
        while True:
            if all(a == 0 for a in s):
                return s
            sp, sn = _masks(s)
            reduced = False
            for k in range(len(g)):
                hp, hn = pos[k], neg[k]
                if hp & ~sp == 0 and hn & ~sn == 0:
                    h = g[k]
                    if conformal_leq(h, s):
                        mult = min(a // b for a, b in zip(s, h) if b)
                        s = tuple(a - mult * b for a, b in zip(s, h))
                        reduced = True
                        break
                if hp & ~sn == 0 and hn & ~sp == 0:
                    h = g[k]
                    if conformal_leq(vec_neg(h), s):
                        mult = min(a // -b for a, b in zip(s, h) if b)
                        s = tuple(a + mult * b for a, b in zip(s, h))
                        reduced = True
                        break
            if not reduced:
                return s

    i = 1
    while i < len(g):
        f = g[i]
        for j in range(i):
            h = g[j]
            for s in (
                tuple(a + b for a, b in zip(f, h))
                if not is_conformal_pair(f, h)
                else None,
                tuple(a - b for a, b in zip(f, h))
                if not is_conformal_pair(f, vec_neg(h))
                else None,
            ):
                if s is None:
                    continue
                s = normal_form(s)
                if any(a != 0 for a in s):
                    s = sign_canonical(s)
                    if s not in seen:
                        seen.add(s)
                        g.append(s)
                        p, q = _masks(s)
                        pos.append(p)
                        neg.append(q)
                        if max_elements is not None and len(g) > max_elements:
                            raise CapExceeded(
                                "basis elements", max_elements, partial=list(g)
                            )
                        if checkpoint is not None:
                            checkpoint(g)
        i += 1
    return _interreduce(g)


def _interreduce(g: list[Vector]) -> list[Vector]:
    """Keep the conformally-minimal elements of a +-canonical set."""
    uniq = sorted(set(g))
    masked = [(_masks(v), v) for v in uniq]
    keep = []
    for (vp, vn), v in masked:
        minimal = True
        for (wp, wn), w in masked:
            if w == v:
                continue
            if wp & ~vp == 0 and wn & ~vn == 0 and conformal_leq(w, v):
                minimal = False
                break
            if wp & ~vn == 0 and wn & ~vp == 0 and conformal_leq(vec_neg(w), v):
                minimal = False
                break
        if minimal:
            keep.append(v)
    return keep


# ---------------------------------------------------------------------------
# numba-compiled completion (int64, n <= 64, magnitude-guarded)

if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _pottier_jit(seed, max_elements):  # pragma: no cover - compiled
        n = seed.shape[1]
        cap = max(1024, seed.shape[0] * 4)
        g = np.zeros((cap, n), dtype=np.int64)
        pos = np.zeros(cap, dtype=np.uint64)
        neg = np.zeros(cap, dtype=np.uint64)
        count = 0
        for si in range(seed.shape[0]):
            g[count] = seed[si]
            count += 1
        for k in range(count):
            p = np.uint64(0)
            q = np.uint64(0)
            for c in range(n):
                if g[k, c] > 0:
                    p |= np.uint64(1) << np.uint64(c)
                elif g[k, c] < 0:
                    q |= np.uint64(1) << np.uint64(c)
            pos[k] = p
            neg[k] = q
        s = np.zeros(n, dtype=np.int64)
        zero64 = np.uint64(0)
        i = 1
        while i < count:
            for j in range(i):
                for t in range(2):
                    sgn = 1 if t == 0 else -1
                    conflict = False
                    for c in range(n):
                        b = sgn * g[j, c]
                        if (g[i, c] > 0 and b < 0) or (g[i, c] < 0 and b > 0):
                            conflict = True
                            break
                    if not conflict:
                        continue
                    for c in range(n):
                        s[c] = g[i, c] + sgn * g[j, c]
                    # conformal normal form
                    while True:
                        nonzero = False
                        sp = zero64
                        sn = zero64
                        for c in range(n):
                            if s[c] > 0:
                                sp |= np.uint64(1) << np.uint64(c)
                                nonzero = True
                            elif s[c] < 0:
                                sn |= np.uint64(1) << np.uint64(c)
                                nonzero = True
                        if not nonzero:
                            break
                        reduced = False
                        for k in range(count):
                            if (pos[k] & ~sp) == zero64 and (neg[k] & ~sn) == zero64:
                                ok = True
                                mult = 0
                                first = True
                                for c in range(n):
                                    a = g[k, c]
                                    if a != 0:
                                        if (a > 0) != (s[c] > 0) or s[c] == 0:
                                            ok = False
                                            break
                                        d = s[c] // a
                                        if d < 1:
                                            ok = False
                                            break
                                        if first or d < mult:
                                            mult = d
                                            first = False
                                if ok and not first:
                                    for c in range(n):
                                        s[c] -= mult * g[k, c]
                                    reduced = True
                                    break
                            if (pos[k] & ~sn) == zero64 and (neg[k] & ~sp) == zero64:
                                ok = True
                                mult = 0
                                first = True
                                for c in range(n):
                                    a = -g[k, c]
                                    if a != 0:
                                        if (a > 0) != (s[c] > 0) or s[c] == 0:
                                            ok = False
                                            break
                                        d = s[c] // a
                                        if d < 1:
                                            ok = False
                                            break
                                        if first or d < mult:
                                            mult = d
                                            first = False
                                if ok and not first:
                                    for c in range(n):
                                        s[c] += mult * g[k, c]
                                    reduced = True
                                    break
                        if not reduced:
                            break
                    nonzero = False
                    for c in range(n):
                        if s[c] != 0:
                            nonzero = True
                            break
                    if nonzero:
                        # sign-canonicalize
                        for c in range(n):
                            if s[c] != 0:
                                if s[c] < 0:
                                    for cc in range(n):
                                        s[cc] = -s[cc]
                                break
                        for c in range(n):
                            if s[c] > _INT64_GUARD or s[c] < -_INT64_GUARD:
                                return g[:1], -2  # magnitude guard tripped
                        if count == cap:
                            newcap = cap * 2
                            g2 = np.zeros((newcap, n), dtype=np.int64)
                            g2[:count] = g[:count]
                            g = g2
                            pos2 = np.zeros(newcap, dtype=np.uint64)
                            pos2[:count] = pos[:count]
                            pos = pos2
                            neg2 = np.zeros(newcap, dtype=np.uint64)
                            neg2[:count] = neg[:count]
                            neg = neg2
                            cap = newcap
                        g[count] = s
                        p = zero64
                        q = zero64
                        for c in range(n):
                            if s[c] > 0:
                                p |= np.uint64(1) << np.uint64(c)
                            elif s[c] < 0:
                                q |= np.uint64(1) << np.uint64(c)
                        pos[count] = p
                        neg[count] = q
                        count += 1
                        if max_elements > 0 and count > max_elements:
                            return g[:count], -1  # cap exceeded
            i += 1
        return g[:count], 0

    @numba.njit(cache=True)
    def _interreduce_jit(g):  # pragma: no cover - compiled
        count, n = g.shape
        pos = np.zeros(count, dtype=np.uint64)
        neg = np.zeros(count, dtype=np.uint64)
        for k in range(count):
            p = np.uint64(0)
            q = np.uint64(0)
            for c in range(n):
                if g[k, c] > 0:
                    p |= np.uint64(1) << np.uint64(c)
                elif g[k, c] < 0:
                    q |= np.uint64(1) << np.uint64(c)
            pos[k] = p
            neg[k] = q
        keep = np.ones(count, dtype=np.bool_)
        zero64 = np.uint64(0)
        for v in range(count):
            for w in range(count):
                if w == v:
                    continue
                if (pos[w] & ~pos[v]) == zero64 and (neg[w] & ~neg[v]) == zero64:
                    ok = True
                    for c in range(n):
                        a = g[w, c]
                        if a > 0 and not (0 < a <= g[v, c]):
                            ok = False
                            break
                        if a < 0 and not (g[v, c] <= a < 0):
                            ok = False
                            break
                    if ok:
                        keep[v] = False
                        break
                if (pos[w] & ~neg[v]) == zero64 and (neg[w] & ~pos[v]) == zero64:
                    ok = True
                    for c in range(n):
                        a = -g[w, c]
                        if a > 0 and not (0 < a <= g[v, c]):
                            ok = False
                            break
                        if a < 0 and not (g[v, c] <= a < 0):
                            ok = False
                            break
                    if ok:
                        keep[v] = False
                        break
        return keep


def _pottier_numba(seeds: list[Vector], n: int, max_elements: int | None):
    seed = np.array(sorted({sign_canonical(v) for v in seeds} - {(0,) * n}),
                    dtype=np.int64).reshape(-1, n)
    if seed.shape[0] == 0:
        return []
    g, status = _pottier_jit(seed, max_elements or 0)
    if status == -2:
        return None  # magnitude guard: caller falls back to pure python
    if status == -1:
        partial = [tuple(int(x) for x in row) for row in g]
        raise CapExceeded("basis elements", max_elements or 0, partial=partial)
    # dedupe (the jit loop cannot hash tuples)
    uniq = sorted({tuple(int(x) for x in row) for row in g})
    arr = np.array(uniq, dtype=np.int64)
    keep = _interreduce_jit(arr)
    return [u for u, k in zip(uniq, keep) if k]


# ---------------------------------------------------------------------------
# network (signed graph incidence) fast path


def _network_structure(m: Matrix):
    """Row scaling making every column one +1 / one -1, or None.

    Accepts matrices whose every column has exactly two nonzero entries in
    {+1, -1}; a consistent row scaling is found by 2-coloring, which is
    exactly the condition for the matrix to be the incidence matrix of a
    directed graph (hence totally unimodular).
    """
    nrows, ncols = len(m), len(m[0])
    cols = []
    for j in range(ncols):
        nz = [(i, m[i][j]) for i in range(nrows) if m[i][j] != 0]
        if len(nz) != 2 or any(abs(v) != 1 for _, v in nz):
            return None
        cols.append(nz)
    scale = [0] * nrows  # 0 unknown, else +-1
    for (a, va), (b, vb) in cols:
        # constraint: scale[a]*va == -scale[b]*vb
        rel = -va * vb  # scale[a] == rel * scale[b]
        if scale[a] == 0 and scale[b] == 0:
            scale[b] = 1
            scale[a] = rel
        elif scale[a] == 0:
            scale[a] = rel * scale[b]
        elif scale[b] == 0:
            scale[b] = rel * scale[a]
        elif scale[a] != rel * scale[b]:
            return None
    # propagate until stable (columns may arrive before their component is
    # anchored; iterate to a fixed point)
    for _ in range(ncols):
        changed = False
        for (a, va), (b, vb) in cols:
            rel = -va * vb
            if scale[a] != 0 and scale[b] != 0:
                if scale[a] != rel * scale[b]:
                    return None
            elif scale[a] != 0:
                scale[b] = rel * scale[a]
                changed = True
            elif scale[b] != 0:
                scale[a] = rel * scale[b]
                changed = True
        if not changed:
            break
    arcs = []
    for j, ((a, va), (b, vb)) in enumerate(cols):
        ea = va * (scale[a] if scale[a] else 1)
        head, tail = (a, b) if ea == 1 else (b, a)
        arcs.append((tail, head, j))
    return arcs


def _cycles_of_network(arcs, ncols: int, max_elements: int | None) -> list[Vector]:
    """All simple cycles of the multigraph, as signed kernel vectors."""
    adj: dict[int, list[tuple[int, int, int]]] = {}
    for tail, head, j in arcs:
        adj.setdefault(tail, []).append((head, j, 1))   # traversing tail->head: x_j=+1
        adj.setdefault(head, []).append((tail, j, -1))  # traversing head->tail: x_j=-1
    for v in adj:
        adj[v].sort()
    out: list[Vector] = []
    vertices = sorted(adj)

    def emit(path_edges: list[tuple[int, int]]) -> None:
        x = [0] * ncols
        for j, sgn in path_edges:
            x[j] = sgn
        out.append(sign_canonical(tuple(x)))
        if max_elements is not None and len(out) > max_elements:
            raise CapExceeded("basis elements", max_elements, partial=list(out))

    for root in vertices:
        path_vertices = [root]
        path_edges: list[tuple[int, int]] = []
        on_path = {root}

        def rec(u: int) -> None:
            for w, j, sgn in adj.get(u, ()):
                if w == root:
                    if len(path_edges) == 0:
                        continue
                    if len(path_edges) == 1:
                        # 2-cycle through parallel/antiparallel arcs
                        if j > path_edges[0][0]:
                            emit(path_edges + [(j, sgn)])
                    else:
                        # direction dedup for longer cycles
                        if path_vertices[1] < path_vertices[-1]:
                            emit(path_edges + [(j, sgn)])
                elif w > root and w not in on_path:
                    path_vertices.append(w)
                    path_edges.append((j, sgn))
                    on_path.add(w)
                    rec(w)
                    on_path.discard(w)
                    path_edges.pop()
                    path_vertices.pop()

        rec(root)
    return sorted(set(out))


# ---------------------------------------------------------------------------
# public entry point


def graver_basis_vectors(
    m,
    max_elements: int | None = None,
    checkpoint=None,
    force_pure: bool = False,
) -> list[Vector]:
    """The Graver basis of m, sign-canonical and sorted."""
    m = as_matrix(m)
    if not m or not m[0]:
        raise ValueError("matrix needs at least one column")
    ncols = len(m[0])
    zero_cols = [j for j in range(ncols) if all(row[j] == 0 for row in m)]
    if zero_cols:
        live = [j for j in range(ncols) if j not in zero_cols]
        out = [
            tuple(1 if j == z else 0 for j in range(ncols)) for z in zero_cols
        ]
        if live:
            sub = tuple(tuple(row[j] for j in live) for row in m)
            for v in graver_basis_vectors(
                sub, max_elements=max_elements, checkpoint=checkpoint,
                force_pure=force_pure,
            ):
                full = [0] * ncols
                for j, val in zip(live, v):
                    full[j] = val
                out.append(tuple(full))
        return sorted(out)

    if not force_pure:
        arcs = _network_structure(m)
        if arcs is not None:
            return _cycles_of_network(arcs, ncols, max_elements)

    seeds = kernel_lattice_basis(m)
    if not seeds:
        return []
    if (
        not force_pure
        and _HAVE_NUMBA
        and ncols <= 64
        and max(abs(x) for v in seeds for x in v) < _INT64_GUARD
    ):
        res = _pottier_numba(seeds, ncols, max_elements)
        if res is not None:
            return sorted(res)
    return sorted(_pottier_pure(seeds, max_elements, checkpoint=checkpoint))


def stabilized_bruteforce(m, start_box: int = 1, max_box: int = 6) -> list[Vector]:
    """Brute-force Graver with the box grown until two consecutive sizes agree."""
    prev = graver_bruteforce(m, start_box)
    for box in range(start_box + 1, max_box + 1):
        cur = graver_bruteforce(m, box)
        if cur == prev:
            return cur
        prev = cur
    raise RuntimeError(f"brute-force box did not stabilize by {max_box}")
