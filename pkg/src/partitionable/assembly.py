"""Composition tools: gluing partitioned pieces, transferring schemes along
poset isomorphisms, folding maps, and cutting surfaces open.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .complex import (
    VOID,
    Complex,
    RelComplex,
    as_face,
    as_rel,
    face_key,
    fmt_face,
    label_key,
    sort_faces,
    union,
)
from .errors import (
    CutError,
    Degenerate,
    F1Violation,
    F2Violation,
    FacetContainment,
    G1Violation,
    G2NotSubcomplex,
    LocusDimension,
    LocusNotSeparating,
    LocusNotSubcomplex,
    NotAPosetIsomorphism,
    NotPure,
    NotSimplicial,
    NotSurjective,
    StructureViolation,
    SubsetPreconditionViolation,
    UnverifiedScheme,
)
from .partition import (
    Interval,
    PartitionScheme,
    ShellingOrder,
    decide_partitionable,
    find_shelling,
    scheme_from_shelling,
    verify_partitioning,
    verify_shelling,
)


@dataclass(frozen=True)
class Partitioned:
    """A relative complex together with a verified scheme (and maybe a shelling)."""

    complex: RelComplex
    scheme: PartitionScheme
    shelling: ShellingOrder | None = None

    @classmethod
    def from_shelling(cls, rc, order) -> "Partitioned":
        rc = as_rel(rc)
        order = order if isinstance(order, ShellingOrder) else ShellingOrder(tuple(order))
        return cls(rc, scheme_from_shelling(rc, order), order)


GlueResult = Partitioned


def _check_scheme(p: Partitioned, name: str) -> None:
    verdict = verify_partitioning(p.complex, p.scheme)
    if not verdict:
        raise UnverifiedScheme(f"scheme of {name} does not verify: {verdict.message}",
                               witness=verdict.witness)


def _check_facets(fa, fb) -> None:
    for x in sort_faces(fa):
        for y in fb:
            if x < y:
                raise FacetContainment(
                    f"facet {fmt_face(x)} is properly contained in facet {fmt_face(y)}",
                    witness=(x, y),
                )
            if y < x:
                raise FacetContainment(
                    f"facet {fmt_face(y)} is properly contained in facet {fmt_face(x)}",
                    witness=(y, x),
                )


def glue(a: Partitioned, b: Partitioned) -> Partitioned:
    """Union of two partitioned relative complexes whose face sets are disjoint.

    The result is ``(Δa ∪ Δb, Σ)`` with
    ``Σ = (Γa \\ Δb) ∪ (Γb \\ Δa) ∪ (Γa ∩ Γb)``; its scheme is the
    concatenation of the two input schemes.
    """
    _check_scheme(a, "a")
    _check_scheme(b, "b")
    ra, rb = a.complex, b.complex
    _check_facets(ra.facets, rb.facets)
    da, ga = ra.total.faces, ra.relative.faces
    db, gb = rb.total.faces, rb.relative.faces
    exposed = (da & db) - (ga | gb)
    if exposed:
        w = sort_faces(exposed)[0]
        raise G1Violation(f"shared face {fmt_face(w)} is in neither relative part", witness=w)
    sigma = (ga - db) | (gb - da) | (ga & gb)
    for f in sort_faces(sigma):
        for v in f:
            if f - {v} not in sigma:
                raise G2NotSubcomplex(
                    f"{fmt_face(f)} is in the glued relative part but {fmt_face(f - {v})} is not",
                    witness=f - {v},
                )
    combined = RelComplex(union(ra.total, rb.total), Complex.from_faces(sigma))
    scheme = a.scheme + b.scheme
    verdict = verify_partitioning(combined, scheme)
    if not verdict:
        raise StructureViolation(f"glued scheme fails: {verdict.message}", witness=verdict.witness)
    return Partitioned(combined, scheme)


def glue_shelling_like(
    a: Partitioned,
    b_total: Complex,
    b_gamma: Complex | None = None,
    b_scheme: PartitionScheme | None = None,
    b_shelling: ShellingOrder | None = None,
) -> Partitioned:
    """Attach ``b_total`` to ``a`` along their intersection.

    The second piece is ``(b_total, (Δa ∩ b_total) ∪ b_gamma)``.  Its scheme
    may be supplied; otherwise a shelling is searched for first and a
    general partitioning second.  The result is
    ``(Δa ∪ b_total, Γa ∪ b_gamma)``, shelled when both pieces are.
    """
    b_gamma = VOID if b_gamma is None else b_gamma
    if not b_gamma.faces <= b_total.faces:
        w = sort_faces(b_gamma.faces - b_total.faces)[0]
        raise SubsetPreconditionViolation(f"{fmt_face(w)} of b_gamma is not in b_total", witness=w)
    ra = a.complex
    leak = (ra.total.faces & b_gamma.faces) - ra.relative.faces
    if leak:
        w = sort_faces(leak)[0]
        raise SubsetPreconditionViolation(
            f"{fmt_face(w)} lies in Δa ∩ b_gamma but not in Γa", witness=w
        )
    gamma_b = Complex.from_faces((ra.total.faces & b_total.faces) | b_gamma.faces)
    phi_b = RelComplex(b_total, gamma_b)
    if b_scheme is None:
        if b_shelling is None:
            found = find_shelling(phi_b)
            b_shelling = found.shelling
        if b_shelling is not None:
            b_scheme = scheme_from_shelling(phi_b, b_shelling)
        else:
            found = decide_partitionable(phi_b)
            if not found:
                raise UnverifiedScheme("second piece is not partitionable", witness=found.reason)
            b_scheme = found.scheme
    out = glue(a, Partitioned(phi_b, b_scheme, b_shelling))
    expected = ra.relative.faces | b_gamma.faces
    if out.complex.relative.faces != expected:
        raise StructureViolation("glued relative part differs from Γa ∪ Γb")
    shelling = None
    if a.shelling is not None and b_shelling is not None:
        shelling = a.shelling + b_shelling
        verdict = verify_shelling(out.complex, shelling)
        if not verdict:
            raise StructureViolation(f"concatenated shelling fails: {verdict.message}")
    return Partitioned(out.complex, out.scheme, shelling)


def transfer_scheme(iso: Mapping, source: Partitioned, target) -> PartitionScheme:
    """Carry a scheme across an inclusion-preserving bijection of face posets."""
    target = as_rel(target)
    iso = {as_face(k): as_face(v) for k, v in iso.items()}
    src_faces = source.complex.faces
    if set(iso) != set(src_faces):
        raise NotAPosetIsomorphism("map is not defined on exactly the source faces")
    if set(iso.values()) != set(target.faces) or len(set(iso.values())) != len(iso):
        raise NotAPosetIsomorphism("map is not a bijection onto the target faces")
    items = sort_faces(src_faces)
    for x, y in combinations(items, 2):
        for p, q in ((x, y), (y, x)):
            if (p <= q) != (iso[p] <= iso[q]):
                raise NotAPosetIsomorphism(
                    f"inclusion not preserved between {fmt_face(p)} and {fmt_face(q)}",
                    witness=(p, q),
                )
    _check_scheme(source, "source")
    out = PartitionScheme(tuple(Interval(iso[iv.min], iso[iv.max]) for iv in source.scheme))
    verdict = verify_partitioning(target, out)
    if not verdict:
        raise StructureViolation(f"transferred scheme fails: {verdict.message}")
    return out


@dataclass(frozen=True)
class FoldingMap:
    """A validated vertex map folding ``source`` onto ``target``."""

    source: RelComplex
    vertex_map: Mapping
    target: RelComplex

    def image(self, face) -> frozenset:
        return frozenset(self.vertex_map[v] for v in face)


def make_folding_map(source, vertex_map: Mapping, target_total: Complex | None = None) -> FoldingMap:
    source = as_rel(source)
    vmap = dict(vertex_map)
    for v in sorted(source.total.vertices, key=label_key):
        if v not in vmap:
            raise NotSimplicial(f"vertex {v!r} has no image", witness=v)
    images = []
    for F in source.total.sorted_facets():
        img = frozenset(vmap[v] for v in F)
        if len(img) != len(F):
            raise Degenerate(f"facet {fmt_face(F)} collapses to {fmt_face(img)}", witness=F)
        images.append(img)
    total = Complex(images)
    if target_total is not None:
        extra = total.faces - target_total.faces
        if extra:
            w = sort_faces(extra)[0]
            raise NotSimplicial(f"image face {fmt_face(w)} is not in the target", witness=w)
        if total != target_total:
            w = sort_faces(target_total.faces - total.faces)[0]
            raise NotSurjective(f"target face {fmt_face(w)} is not hit", witness=w)
    hit: dict = {}
    for f in sort_faces(source.faces):
        img = frozenset(vmap[v] for v in f)
        if img in hit:
            raise F1Violation(
                f"{fmt_face(hit[img])} and {fmt_face(f)} both map to {fmt_face(img)}",
                witness=(hit[img], f),
            )
        hit[img] = f
    gamma = total.faces - hit.keys()
    for g in sort_faces(gamma):
        for v in g:
            if g - {v} not in gamma:
                raise F1Violation(
                    f"leftover part is not a complex: {fmt_face(g)} without {fmt_face(g - {v})}",
                    witness=g,
                )
    target = RelComplex(total, Complex.from_faces(gamma))
    for F in source.sorted_facets():
        img = frozenset(vmap[v] for v in F)
        if img not in target.facets:
            raise F2Violation(f"facet {fmt_face(F)} maps to non-facet {fmt_face(img)}", witness=F)
    return FoldingMap(source, vmap, target)


def fold_scheme(m: FoldingMap, scheme: PartitionScheme) -> PartitionScheme:
    verdict = verify_partitioning(m.source, scheme)
    if not verdict:
        raise UnverifiedScheme(f"scheme does not verify on the source: {verdict.message}")
    out = PartitionScheme(tuple(Interval(m.image(iv.min), m.image(iv.max)) for iv in scheme))
    verdict = verify_partitioning(m.target, out)
    if not verdict:
        raise StructureViolation(f"folded scheme fails: {verdict.message}")
    return out


@dataclass(frozen=True)
class CutResult:
    """The cut complex plus the vertex map sending copies back to originals."""

    complex: Complex
    vertex_map: dict

    def __iter__(self):
        return iter((self.complex, self.vertex_map))

    def folding_map(self, relative: Complex, target_total: Complex | None = None) -> FoldingMap:
        return make_folding_map(RelComplex(self.complex, relative), self.vertex_map, target_total)


def _sectors(v, tris: list, locus_edges: set) -> list:
    parent = list(range(len(tris)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_edge: dict = {}
    for i, t in enumerate(tris):
        for w in t - {v}:
            e = frozenset((v, w))
            if e not in locus_edges:
                by_edge.setdefault(e, []).append(i)
    for idx in by_edge.values():
        for j in idx[1:]:
            parent[find(j)] = find(idx[0])
    groups: dict = {}
    for i in range(len(tris)):
        groups.setdefault(find(i), []).append(tris[i])
    return sorted(groups.values(), key=lambda g: min(map(face_key, g)))


def cut(c: Complex, locus: Complex) -> CutResult:
    """Cut a pure 2-complex open along a 1-dimensional subcomplex.

    Each locus vertex is replaced by one copy ``(v, i)`` per sector of
    triangles around it (sectors are separated by locus edges and ordered
    by their smallest triangle); a vertex with one sector keeps its label.
    """
    if c.dim != 2 or not c.is_pure:
        raise NotPure("cut needs a pure 2-dimensional complex")
    if not locus.faces <= c.faces:
        w = sort_faces(locus.faces - c.faces)[0]
        raise LocusNotSubcomplex(f"locus face {fmt_face(w)} is not in the complex", witness=w)
    if locus.dim != 1:
        raise LocusDimension("locus must be 1-dimensional")
    locus_edges = {f for f in locus.faces if len(f) == 2}
    tris = c.sorted_facets()
    rename: dict = {}  # (triangle, vertex) -> copy label
    vmap: dict = {v: v for v in c.vertices}
    for v in sorted(locus.vertices, key=label_key):
        around = [t for t in tris if v in t]
        groups = _sectors(v, around, locus_edges)
        if len(groups) == 1:
            continue
        del vmap[v]
        for i, g in enumerate(groups):
            copy = (v, i)
            vmap[copy] = v
            for t in g:
                rename[(t, v)] = copy
    new = [frozenset(rename.get((t, v), v) for v in t) for t in tris]
    out = Complex(new)
    for e in sort_faces(locus_edges):
        images = {frozenset(rename.get((t, v), v) for v in e) for t in tris if e <= t}
        incident = sum(1 for t in tris if e <= t)
        if len(images) != incident:
            raise LocusNotSeparating(f"edge {fmt_face(e)} is not split by the cut", witness=e)
    return CutResult(out, vmap)
