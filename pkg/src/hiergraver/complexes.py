"""Simplicial complexes in bracket notation, link/deletion, reducibility."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


class ComplexError(ValueError):
    """Malformed bracket notation or invalid complex operation."""


class DeletionEmptyError(ComplexError):
    """Every facet contains the deleted vertex; the deletion has no facets.

    Callers building model matrices should treat the corresponding margin
    matrix as having zero rows.
    """


Face = tuple[int, ...]

# The complex whose single face is the empty set.  It shows up as the link
# of a vertex that forms a singleton facet; its model matrix is the
# grand-total (all ones) row.
EMPTY_FACE: Face = ()


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex given by its facets on vertices 1..n.

    Facets are stored as sorted vertex tuples, sorted lexicographically,
    with non-maximal faces removed.  ``n`` is declared, not inferred, so a
    vertex may be absent from every facet.
    """

    n: int
    facets: tuple[Face, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ComplexError(f"vertex count must be nonnegative, got {self.n}")
        for f in self.facets:
            if any(v < 1 or v > self.n for v in f):
                raise ComplexError(f"facet {f} has vertices outside 1..{self.n}")

    @property
    def support(self) -> tuple[int, ...]:
        """Vertices appearing in some facet, sorted."""
        seen: set[int] = set()
        for f in self.facets:
            seen.update(f)
        return tuple(sorted(seen))

    def faces(self) -> tuple[Face, ...]:
        """All faces (subsets of facets) including the empty face, sorted."""
        out: set[Face] = {EMPTY_FACE}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return tuple(sorted(out))

    def __contains__(self, face) -> bool:
        s = tuple(sorted(face))
        return any(set(s) <= set(f) for f in self.facets)

    def is_empty_face_complex(self) -> bool:
        return self.facets == (EMPTY_FACE,)


def _maximal(faces: list[Face]) -> tuple[Face, ...]:
    uniq = sorted(set(faces))
    keep = [
        f
        for f in uniq
        if not any(f != g and set(f) < set(g) for g in uniq)
    ]
    return tuple(sorted(keep))


def normalize_facets(faces, n: int | None = None) -> SimplicialComplex:
    """Drop non-maximal faces, dedupe, sort; n defaults to the max vertex."""
    faces = [tuple(sorted(set(f))) for f in faces]
    if not faces:
        raise ComplexError("a complex needs at least one face")
    facets = _maximal(faces)
    if facets == (EMPTY_FACE,):
        return SimplicialComplex(0 if n is None else n, facets)
    if n is None:
        n = max(max(f) for f in facets)
    return SimplicialComplex(n, facets)


_GROUP_RE = re.compile(r"\[([^\[\]]*)\]")


def parse_complex(text: str, n: int | None = None) -> SimplicialComplex:
    """Parse bracket notation like ``[12][13][23]`` or ``[1,2][12,3]``.

    Inside a group, vertices are either single digits with no separators
    (compact form) or comma/whitespace-separated integers.  The two forms
    may not be mixed within one group.
    """
    if not text or not text.strip():
        raise ComplexError("empty input")
    stripped = text.strip()
    groups = _GROUP_RE.findall(stripped)
    if _GROUP_RE.sub("", stripped).strip():
        raise ComplexError(f"unbalanced brackets or stray text in {text!r}")
    if not groups:
        raise ComplexError(f"no bracket groups in {text!r}")
    faces: list[Face] = []
    for g in groups:
        g = g.strip()
        if not g:
            raise ComplexError("empty bracket group")
        if re.search(r"[,\s]", g):
            parts = [p for p in re.split(r"[,\s]+", g) if p]
            if not all(p.isdigit() for p in parts):
                raise ComplexError(f"bad vertex in group [{g}]")
            verts = [int(p) for p in parts]
        else:
            if not g.isdigit():
                raise ComplexError(f"bad compact group [{g}]")
            if len(g) > 1 and "0" in g:
                # a multi-digit run with a 0 cannot be compact single digits
                raise ComplexError(f"vertex 0 is invalid in group [{g}]")
            verts = [int(c) for c in g]
        if any(v < 1 for v in verts):
            raise ComplexError(f"vertices must be >= 1 in group [{g}]")
        faces.append(tuple(sorted(set(verts))))
    return normalize_facets(faces, n=n)


def render(delta: SimplicialComplex) -> str:
    """Bracket notation; compact when every vertex is a single digit."""
    if delta.is_empty_face_complex():
        return "[]"
    compact = all(v <= 9 for f in delta.facets for v in f)
    if compact:
        return "".join("[" + "".join(str(v) for v in f) + "]" for f in delta.facets)
    return "".join("[" + ",".join(str(v) for v in f) + "]" for f in delta.facets)


def link(delta: SimplicialComplex, v: int) -> SimplicialComplex:
    """link(delta, v) = { F - {v} : F a facet containing v }, normalized."""
    hit = [f for f in delta.facets if v in f]
    if not hit:
        raise ComplexError(f"vertex {v} is not in any facet")
    faces = [tuple(u for u in f if u != v) for f in hit]
    return normalize_facets(faces, n=delta.n)


def deletion(delta: SimplicialComplex, v: int) -> SimplicialComplex:
    """Facets avoiding v that remain maximal among them."""
    rest = [f for f in delta.facets if v not in f]
    if not rest:
        raise DeletionEmptyError(f"every facet contains vertex {v}")
    return normalize_facets(rest, n=delta.n)


@dataclass(frozen=True)
class Decomposition:
    """A reducibility witness: delta = delta1 u delta2 glued along separator."""

    delta1: SimplicialComplex
    separator: Face
    delta2: SimplicialComplex

    @property
    def separator_is_empty(self) -> bool:
        return self.separator == EMPTY_FACE


def is_reducible(delta: SimplicialComplex) -> Decomposition | None:
    """First decomposition (delta1, S, delta2) in lex order over separators S.

    S ranges over all faces of delta including the empty face (the empty
    separator is an interpretation choice: [12][34] is reducible with S
    empty).  Requires S to be a face of both sides, the two vertex sets to
    meet exactly in S, and both sides to be proper.
    """
    facets = delta.facets
    if len(facets) < 2:
        return None
    for sep in delta.faces():
        sset = set(sep)
        inner = [f for f in facets if set(f) <= sset]  # go to both sides
        outer = [f for f in facets if not set(f) <= sset]
        if len(outer) < 2:
            continue
        # components of `outer` under sharing a vertex outside S
        comp_id = list(range(len(outer)))

        def find(i: int) -> int:
            while comp_id[i] != i:
                comp_id[i] = comp_id[comp_id[i]]
                i = comp_id[i]
            return i

        for i, j in itertools.combinations(range(len(outer)), 2):
            if (set(outer[i]) & set(outer[j])) - sset:
                comp_id[find(i)] = find(j)
        comps: dict[int, list[Face]] = {}
        for i, f in enumerate(outer):
            comps.setdefault(find(i), []).append(f)
        if len(comps) < 2:
            continue
        groups = sorted(comps.values())
        # try each single component as the first side
        for k in range(len(groups)):
            side1 = sorted(groups[k] + inner)
            side2 = sorted([f for g in groups[:k] + groups[k + 1:] for f in g] + inner)
            ok1 = sep == EMPTY_FACE or any(sset <= set(f) for f in side1)
            ok2 = sep == EMPTY_FACE or any(sset <= set(f) for f in side2)
            if ok1 and ok2:
                return Decomposition(
                    normalize_facets(side1, n=delta.n),
                    sep,
                    normalize_facets(side2, n=delta.n),
                )
    return None
