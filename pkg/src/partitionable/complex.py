"""Simplicial and relative simplicial complexes.

Faces are ``frozenset`` objects of vertex labels.  Labels are opaque
hashable tokens (ints, strings, tuples of labels, frozensets of labels);
:func:`label_key` puts a total order on all of them so that every listing
of faces is canonical: by dimension first, then lexicographically.

Two complexes with no facets are easy to confuse:

* the *void* complex ``Complex()`` has no faces at all;
* ``EMPTY_FACE = Complex([()])`` has exactly one face, the empty face.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

from .errors import (
    ApexCollision,
    FaceNotInComplex,
    NonPseudomanifold,
    NotPure,
    RelativeNotSubcomplex,
)

Face = frozenset


@lru_cache(maxsize=None)
def label_key(label):
    """Sort key giving a total order on heterogeneous vertex labels."""
    if isinstance(label, bool):
        return (0, int(label))
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    if isinstance(label, frozenset):
        return (3, tuple(sorted(label_key(x) for x in label)))
    return (4, type(label).__name__, repr(label))


@lru_cache(maxsize=None)
def face_key(face: frozenset):
    return (len(face), tuple(sorted(label_key(v) for v in face)))


def sorted_vertices(face) -> tuple:
    """The canonical vertex sequence of a face."""
    return tuple(sorted(face, key=label_key))


def sort_faces(faces: Iterable[frozenset]) -> list:
    return sorted(faces, key=face_key)


def as_face(vertices) -> frozenset:
    if isinstance(vertices, frozenset):
        return vertices
    return frozenset(vertices)


def fmt_face(face) -> str:
    """Compact rendering: ``125`` for single-character labels, else ``{a,b}``."""
    if not face:
        return "∅"
    labels = [str(v) for v in sorted_vertices(face)]
    if all(len(s) == 1 for s in labels):
        return "".join(labels)
    return "{" + ",".join(labels) + "}"


def subfaces(face: frozenset):
    """All subsets of ``face``, including the empty face and ``face`` itself."""
    verts = tuple(face)
    for k in range(len(verts) + 1):
        for c in combinations(verts, k):
            yield frozenset(c)


def _maximal(generators: Iterable[frozenset]) -> frozenset:
    gens = sorted(set(generators), key=len, reverse=True)
    kept: list[frozenset] = []
    by_vertex: dict = {}
    for g in gens:
        if not g:
            if not kept:
                kept.append(g)
            continue
        pools = [by_vertex.get(v) for v in g]
        if all(pools):
            common = set.intersection(*pools)
            if common:
                continue
        idx = len(kept)
        kept.append(g)
        for v in g:
            by_vertex.setdefault(v, set()).add(idx)
    return frozenset(kept)


class Complex:
    """A finite abstract simplicial complex stored by its facets.

    The face set is computed on first use and cached; instances are
    immutable.
    """

    __slots__ = ("facets", "_faces", "_vertices", "_hash")

    def __init__(self, facets: Iterable = ()):
        self.facets = _maximal(as_face(f) for f in facets)
        self._faces = None
        self._vertices = None
        self._hash = None

    @classmethod
    def from_faces(cls, faces: Iterable[frozenset]) -> "Complex":
        """Build from a downward-closed face set (not re-checked)."""
        faces = frozenset(faces)
        maximal = []
        covered = set()
        for f in faces:
            if len(f) > 0:
                for v in f:
                    covered.add(f - {v})
        maximal = [f for f in faces if f not in covered]
        c = cls(maximal)
        c._faces = faces
        return c

    @property
    def faces(self) -> frozenset:
        if self._faces is None:
            out = set()
            for f in self.facets:
                if f in out:
                    continue
                out.update(subfaces(f))
            self._faces = frozenset(out)
        return self._faces

    @property
    def vertices(self) -> frozenset:
        if self._vertices is None:
            self._vertices = frozenset().union(*self.facets) if self.facets else frozenset()
        return self._vertices

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Dimension; ``-1`` for both the void complex and ``{∅}``."""
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def sorted_facets(self) -> list:
        return sort_faces(self.facets)

    def faces_of_dim(self, k: int) -> list:
        return sort_faces(f for f in self.faces if len(f) == k + 1)

    def __contains__(self, face) -> bool:
        return as_face(face) in self.faces

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self.facets == other.facets

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.facets)
        return self._hash

    def __repr__(self) -> str:
        if not self.facets:
            return "Complex()"
        return "Complex<" + ", ".join(fmt_face(f) for f in self.sorted_facets()) + ">"


VOID = Complex()
EMPTY_FACE = Complex([()])


def closure(generators: Iterable) -> Complex:
    """The smallest complex containing every generator."""
    return Complex(generators)


def faces(c, dim: int | None = None) -> list:
    """All faces of ``c`` (or of one dimension), in canonical order."""
    fs = c.faces
    if dim is not None:
        fs = (f for f in fs if len(f) == dim + 1)
    return sort_faces(fs)


def union(a: Complex, b: Complex) -> Complex:
    return Complex(a.facets | b.facets)


def intersection(a: Complex, b: Complex) -> Complex:
    return Complex.from_faces(a.faces & b.faces)


def is_subcomplex(sub: Complex, c: Complex) -> bool:
    return sub.faces <= c.faces


def _require_face(c: Complex, f) -> frozenset:
    f = as_face(f)
    if f not in c.faces:
        raise FaceNotInComplex(f"{fmt_face(f)} is not a face of the complex", witness=f)
    return f


def link(c: Complex, f) -> Complex:
    f = _require_face(c, f)
    return Complex(F - f for F in c.facets if f <= F)


def deletion(c: Complex, f) -> Complex:
    """Faces of ``c`` disjoint from ``f``."""
    f = _require_face(c, f)
    return Complex(F - f for F in c.facets)


def star(c: Complex, f) -> Complex:
    f = _require_face(c, f)
    return Complex(F for F in c.facets if f <= F)


def cone(c: Complex, apex) -> Complex:
    """``apex * c``.  The cone over the void complex is the single vertex."""
    if apex in c.vertices:
        raise ApexCollision(f"apex {apex!r} is already a vertex", witness=apex)
    if not c.facets:
        return Complex([(apex,)])
    return Complex(F | {apex} for F in c.facets)


class RelComplex:
    """A relative complex ``(total, relative)``; its faces are ``total \\ relative``."""

    __slots__ = ("total", "relative", "_faces", "_facets")

    def __init__(self, total: Complex, relative: Complex | None = None):
        if relative is None:
            relative = VOID
        if not relative.faces <= total.faces:
            bad = sort_faces(relative.faces - total.faces)[0]
            raise RelativeNotSubcomplex(
                f"relative face {fmt_face(bad)} is not in the total complex", witness=bad
            )
        self.total = total
        self.relative = relative
        self._faces = None
        self._facets = None

    @property
    def faces(self) -> frozenset:
        if self._faces is None:
            self._faces = self.total.faces - self.relative.faces
        return self._faces

    @property
    def facets(self) -> frozenset:
        # a maximal element of total\relative is a facet of total
        if self._facets is None:
            rel = self.relative.faces
            self._facets = frozenset(f for f in self.total.facets if f not in rel)
        return self._facets

    def sorted_facets(self) -> list:
        return sort_faces(self.facets)

    @property
    def dim(self) -> int:
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RelComplex)
            and self.total == other.total
            and self.relative == other.relative
        )

    def __hash__(self) -> int:
        return hash((self.total, self.relative))

    def __repr__(self) -> str:
        return f"RelComplex({self.total!r}, {self.relative!r})"


def as_rel(x) -> RelComplex:
    if isinstance(x, RelComplex):
        return x
    if isinstance(x, Complex):
        return RelComplex(x)
    raise TypeError(f"expected Complex or RelComplex, got {type(x).__name__}")


def f_vector(rc, d: int | None = None) -> tuple:
    """``(f_{-1}, f_0, ..., f_{d-1})``; ``d`` defaults to ``dim(total) + 1``."""
    rc = as_rel(rc)
    if d is None:
        d = rc.total.dim + 1
    counts = [0] * (d + 1)
    for f in rc.faces:
        if len(f) <= d:
            counts[len(f)] += 1
    return tuple(counts)


def h_from_f(f: tuple) -> tuple:
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def h_vector(rc, d: int | None = None) -> tuple:
    """The h-vector.  With no faces at all this is the zero vector."""
    return h_from_f(f_vector(rc, d))


def euler_char(c) -> int:
    """Reduced Euler characteristic; 0 for the void complex."""
    rc = as_rel(c)
    return sum(1 if len(f) % 2 else -1 for f in rc.faces)


def minimal_representation(rc) -> RelComplex:
    rc = as_rel(rc)
    total = Complex(rc.facets)
    return RelComplex(total, Complex.from_faces(total.faces - rc.faces))


def edge_triangle_counts(c: Complex) -> dict:
    counts: dict = {}
    for t in c.facets:
        for e in combinations(t, 2):
            e = frozenset(e)
            counts[e] = counts.get(e, 0) + 1
    return counts


def boundary(c: Complex) -> Complex:
    """Closure of the edges of a pure 2-complex that lie in exactly one triangle."""
    if c.is_void:
        return VOID
    if c.dim != 2 or not c.is_pure:
        raise NotPure("boundary is defined for pure 2-dimensional complexes")
    counts = edge_triangle_counts(c)
    bad = [e for e, n in counts.items() if n > 2]
    if bad:
        e = sort_faces(bad)[0]
        raise NonPseudomanifold(f"edge {fmt_face(e)} lies in {counts[e]} triangles", witness=e)
    return Complex(e for e, n in counts.items() if n == 1)
