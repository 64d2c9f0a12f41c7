"""Partitioning schemes and shellings of relative complexes.

A partitioning scheme covers the face poset of a relative complex by
disjoint intervals ``[R, F]`` whose tops are facets.  Since a facet lies
only in intervals topped by itself, deciding partitionability is an exact
cover problem over the faces: every face must be covered by exactly one
chosen interval, and each facet automatically receives exactly one.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import networkx as nx

from .complex import (
    Complex,
    RelComplex,
    as_face,
    as_rel,
    face_key,
    fmt_face,
    h_vector,
    sort_faces,
    subfaces,
)
from .errors import InvalidShelling, NotAFacet, ResourceLimit


@dataclass(frozen=True)
class Interval:
    min: frozenset
    max: frozenset

    def __post_init__(self):
        object.__setattr__(self, "min", as_face(self.min))
        object.__setattr__(self, "max", as_face(self.max))
        if not self.min <= self.max:
            raise ValueError(f"{fmt_face(self.min)} is not contained in {fmt_face(self.max)}")

    @property
    def rank(self) -> int:
        return len(self.max) - len(self.min)

    def faces(self):
        for extra in subfaces(self.max - self.min):
            yield self.min | extra

    def __contains__(self, face) -> bool:
        return self.min <= face <= self.max

    def __repr__(self) -> str:
        return f"[{fmt_face(self.min)}, {fmt_face(self.max)}]"


@dataclass(frozen=True)
class PartitionScheme:
    intervals: tuple = ()

    def __post_init__(self):
        ivs = tuple(iv if isinstance(iv, Interval) else Interval(*iv) for iv in self.intervals)
        object.__setattr__(self, "intervals", ivs)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __add__(self, other: "PartitionScheme") -> "PartitionScheme":
        return PartitionScheme(self.intervals + tuple(other.intervals))

    def canonical(self) -> "PartitionScheme":
        return PartitionScheme(tuple(sorted(self.intervals, key=lambda iv: face_key(iv.max))))

    def __repr__(self) -> str:
        return " ⊔ ".join(map(repr, self.intervals)) or "PartitionScheme()"


@dataclass(frozen=True)
class ShellingOrder:
    order: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(as_face(f) for f in self.order))

    def __iter__(self):
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def __add__(self, other: "ShellingOrder") -> "ShellingOrder":
        return ShellingOrder(self.order + tuple(other.order))

    def __repr__(self) -> str:
        return "ShellingOrder(" + ", ".join(fmt_face(f) for f in self.order) + ")"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification: truthy when ``ok``."""

    ok: bool
    clause: str = ""
    witness: object = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)


def candidate_minima(rc, facet) -> list:
    """Faces ``R`` of ``rc`` inside ``facet``; ``[R, facet]`` is then inside ``rc``."""
    rc = as_rel(rc)
    facet = as_face(facet)
    if facet not in rc.facets:
        raise NotAFacet(f"{fmt_face(facet)} is not a facet", witness=facet)
    rel = rc.relative.faces
    return sort_faces(r for r in subfaces(facet) if r not in rel)


def verify_partitioning(rc, scheme) -> Verdict:
    rc = as_rel(rc)
    facets = rc.facets
    faces = rc.faces
    seen: dict = {}
    for iv in scheme:
        if iv.max not in facets:
            return Verdict(False, "facet", iv.max, f"top {fmt_face(iv.max)} is not a facet")
        if iv.min not in faces:
            return Verdict(False, "containment", iv.min, f"{fmt_face(iv.min)} is not a face")
        for f in iv.faces():
            if f not in faces:
                return Verdict(False, "containment", f, f"{fmt_face(f)} is not a face")
            if f in seen:
                return Verdict(
                    False, "disjoint", f, f"{fmt_face(f)} lies in {seen[f]!r} and {iv!r}"
                )
            seen[f] = iv
    if len(seen) != len(faces):
        missing = sort_faces(faces - seen.keys())[0]
        return Verdict(False, "coverage", missing, f"{fmt_face(missing)} is not covered")
    return OK


def interval_stats(scheme, d: int | None = None) -> tuple:
    """Histogram of ``dim(min) + 1``; length ``d + 1`` (default: largest top size)."""
    ivs = list(scheme)
    if d is None:
        d = max((len(iv.max) for iv in ivs), default=0)
    hist = [0] * (d + 1)
    for iv in ivs:
        hist[len(iv.min)] += 1
    return tuple(hist)


@dataclass
class SearchConfig:
    node_budget: int = 10**8
    h_pruning: bool = True
    matching_fast_path: bool = True


@dataclass
class SearchResult:
    """``scheme`` (or ``shelling``) is set when found; otherwise ``reason`` says why not."""

    scheme: PartitionScheme | None = None
    shelling: ShellingOrder | None = None
    reason: str = ""
    witness: object = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.scheme is not None or self.shelling is not None

    def __bool__(self) -> bool:
        return self.found


def _h_for_search(rc: RelComplex):
    return h_vector(rc, rc.dim + 1)


def _matching_fast_path(rc: RelComplex, h: tuple):
    # h concentrated in one entry k: every minimum has size k and the faces
    # of size k are exactly the minima, so a bipartite matching decides it
    support = [i for i, x in enumerate(h) if x]
    if len(support) != 1:
        return None
    k = support[0]
    if any(len(f) < k for f in rc.faces):
        return None
    minima = sort_faces(f for f in rc.faces if len(f) == k)
    facets = rc.sorted_facets()
    if len(minima) != len(facets):
        return None
    g = nx.Graph()
    top = [("F", i) for i in range(len(facets))]
    g.add_nodes_from(top)
    g.add_nodes_from(("R", j) for j in range(len(minima)))
    index = {m: j for j, m in enumerate(minima)}
    for i, F in enumerate(facets):
        for c in combinations(sorted(F, key=repr), k):
            j = index.get(frozenset(c))
            if j is not None:
                g.add_edge(("F", i), ("R", j))
    match = nx.bipartite.hopcroft_karp_matching(g, top_nodes=top)
    if not all(t in match for t in top):
        return None
    scheme = PartitionScheme(
        tuple(Interval(minima[match[("F", i)][1]], F) for i, F in enumerate(facets))
    )
    return scheme if verify_partitioning(rc, scheme) else None


def decide_partitionable(rc, config: SearchConfig | None = None) -> SearchResult:
    """Exact search for a partitioning scheme.

    Returns a found scheme, or a negative result once the search space is
    exhausted.  Raises :class:`ResourceLimit` when the node budget runs out.
    """
    rc = as_rel(rc)
    config = config or SearchConfig()
    if not rc.faces:
        return SearchResult(scheme=PartitionScheme(()))
    quota = None
    if rc.is_pure and config.h_pruning:
        h = _h_for_search(rc)
        if any(x < 0 for x in h):
            return SearchResult(reason="negative h entry", witness=h)
        quota = list(h)
        if config.matching_fast_path:
            fast = _matching_fast_path(rc, h)
            if fast is not None:
                return SearchResult(scheme=fast)

    face_list = sort_faces(rc.faces)
    options: list[tuple] = []  # (min, facet, covered faces)
    for F in rc.sorted_facets():
        for R in candidate_minima(rc, F):
            options.append((R, F, [R | e for e in subfaces(F - R)]))
    cols: dict = {f: set() for f in face_list}
    for i, (_, _, covered) in enumerate(options):
        for f in covered:
            cols[f].add(i)
    order = {f: n for n, f in enumerate(face_list)}

    chosen: list[int] = []
    nodes = 0

    def select(i):
        removed = []
        for f in options[i][2]:
            for j in cols[f]:
                for g in options[j][2]:
                    if g != f:
                        cols[g].discard(j)
            removed.append((f, cols.pop(f)))
        return removed

    def deselect(i, removed):
        for f, rows in reversed(removed):
            cols[f] = rows
            for j in rows:
                for g in options[j][2]:
                    if g != f:
                        cols[g].add(j)

    def usable(j):
        return quota is None or quota[len(options[j][0])] > 0

    def search():
        nonlocal nodes
        if not cols:
            return True
        best = None
        best_n = None
        for f, rows in cols.items():
            n = sum(1 for j in rows if usable(j)) if quota is not None else len(rows)
            if best is None or n < best_n or (n == best_n and order[f] < order[best]):
                best, best_n = f, n
                if n == 0:
                    return False
        for j in sorted(cols[best]):
            if not usable(j):
                continue
            nodes += 1
            if nodes > config.node_budget:
                raise ResourceLimit(f"node budget {config.node_budget} exhausted", nodes)
            chosen.append(j)
            if quota is not None:
                quota[len(options[j][0])] -= 1
            removed = select(j)
            if search():
                return True
            deselect(j, removed)
            if quota is not None:
                quota[len(options[j][0])] += 1
            chosen.pop()
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(rc.facets) + 1000))
    try:
        ok = search()
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return SearchResult(reason="search exhausted", nodes=nodes)
    scheme = PartitionScheme(tuple(Interval(options[j][0], options[j][1]) for j in chosen))
    return SearchResult(scheme=scheme.canonical(), nodes=nodes)


def _attach(face: frozenset, lam) -> frozenset | None:
    """Minimal new face when ``face`` is attached to ``lam``, or None if illegal.

    Legal means ``<face> ∩ lam`` is pure of dimension ``dim(face) - 1``; an
    entirely void ``lam`` accepts anything (first facet of a plain shelling).
    """
    if not lam:
        return frozenset()
    ridges = [face - {v} for v in face if face - {v} in lam]
    if not ridges:
        return None
    for r in subfaces(face):
        if r != face and r in lam and not any(r <= s for s in ridges):
            return None
    return frozenset(v for v in face if face - {v} in lam)


def verify_shelling(rc, order) -> Verdict:
    rc = as_rel(rc)
    facets = rc.facets
    lam = set(rc.relative.faces)
    seen = set()
    for step, F in enumerate(order, start=1):
        F = as_face(F)
        if F not in facets:
            return Verdict(False, "facet", F, f"step {step}: {fmt_face(F)} is not a facet")
        if F in seen:
            return Verdict(False, "repeat", F, f"step {step}: {fmt_face(F)} listed twice")
        seen.add(F)
        R = _attach(F, lam)
        if R is None:
            return Verdict(
                False, "intersection", F,
                f"step {step}: {fmt_face(F)} meets the previous facets badly",
            )
        new = [g for g in subfaces(F) if g not in lam]
        if len(new) != 2 ** (len(F) - len(R)) or any(not R <= g for g in new):
            return Verdict(False, "interval", F, f"step {step}: new faces are not an interval")
        lam.update(new)
    if seen != facets:
        missing = sort_faces(facets - seen)[0]
        return Verdict(False, "coverage", missing, f"facet {fmt_face(missing)} not listed")
    return OK


def scheme_from_shelling(rc, order) -> PartitionScheme:
    rc = as_rel(rc)
    verdict = verify_shelling(rc, order)
    if not verdict:
        raise InvalidShelling(verdict.message, witness=verdict.witness)
    lam = set(rc.relative.faces)
    out = []
    for F in order:
        F = as_face(F)
        out.append(Interval(_attach(F, lam), F))
        lam.update(subfaces(F))
    return PartitionScheme(tuple(out))


def find_shelling(rc, node_budget: int = 10**8) -> SearchResult:
    """Backtracking search for a shelling, memoising dead-end facet sets."""
    rc = as_rel(rc)
    facets = rc.sorted_facets()
    if not facets:
        return SearchResult(shelling=ShellingOrder(()))
    lam = set(rc.relative.faces)
    placed: list = []
    used: set = set()
    dead: set = set()
    nodes = 0

    def search() -> bool:
        nonlocal nodes
        if len(placed) == len(facets):
            return True
        state = frozenset(used)
        if state in dead:
            return False
        for F in facets:
            if F in used or _attach(F, lam) is None:
                continue
            nodes += 1
            if nodes > node_budget:
                raise ResourceLimit(f"node budget {node_budget} exhausted", nodes)
            added = [g for g in subfaces(F) if g not in lam]
            lam.update(added)
            placed.append(F)
            used.add(F)
            if search():
                return True
            used.discard(F)
            placed.pop()
            lam.difference_update(added)
        dead.add(state)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(facets) + 1000))
    try:
        ok = search()
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return SearchResult(reason="no shelling exists", nodes=nodes)
    return SearchResult(shelling=ShellingOrder(tuple(placed)), nodes=nodes)


def brute_force_partitionable(rc) -> bool:
    """Independent oracle: try every facet -> minimum assignment.

    Only for tiny inputs; deliberately shares no code with the search.
    """
    from itertools import product

    rc = as_rel(rc)
    faces = rc.faces
    facets = list(rc.facets)
    choices = []
    for F in facets:
        opts = []
        verts = list(F)
        for k in range(len(verts) + 1):
            for c in combinations(verts, k):
                if frozenset(c) in faces:
                    opts.append(frozenset(c))
        choices.append(opts)
    for pick in product(*choices):
        covered = set()
        total = 0
        ok = True
        for R, F in zip(pick, facets):
            rest = list(F - R)
            for k in range(len(rest) + 1):
                for c in combinations(rest, k):
                    g = R | frozenset(c)
                    if g in covered:
                        ok = False
                        break
                    covered.add(g)
                    total += 1
                if not ok:
                    break
            if not ok:
                break
        if ok and covered == faces:
            return True
    return False


def shelling_of_graph(g: Complex) -> ShellingOrder | None:
    """Edge order of a connected graph in which each edge touches earlier ones."""
    edges = g.sorted_facets()
    if not edges:
        return ShellingOrder(())
    order = [edges[0]]
    seen = set(edges[0])
    rest = edges[1:]
    while rest:
        for i, e in enumerate(rest):
            if e & seen:
                order.append(e)
                seen |= e
                del rest[i]
                break
        else:
            return None
    return ShellingOrder(tuple(order))


def cone_shelling(order: Iterable, apex) -> ShellingOrder:
    return ShellingOrder(tuple(as_face(F) | {apex} for F in order))
