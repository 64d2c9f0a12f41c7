"""Invariant-based recognition of triangulated surfaces and dunce hats.

Surfaces are recognised by the finite table of compact-surface invariants:
closed or not, Euler characteristic, orientability, number of boundary
cycles.  Nothing here proves a homeomorphism; the constructors use these
checks as runtime assertions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .complex import (
    Complex,
    edge_triangle_counts,
    fmt_face,
    label_key,
    link,
    sort_faces,
)
from .errors import CornerAmbiguous, NoSingularCircle, NotASurface, NotPure
from .partition import Verdict

DISK = "disk"
SPHERE = "sphere"
MOBIUS = "mobius"
ANNULUS = "annulus"
TORUS = "torus"
KLEIN = "klein"
RP2 = "rp2"
OTHER = "other"

_TABLE = {
    # (boundary components, euler characteristic, orientable)
    (0, 2, True): SPHERE,
    (0, 0, True): TORUS,
    (0, 1, False): RP2,
    (0, 0, False): KLEIN,
    (1, 1, True): DISK,
    (2, 0, True): ANNULUS,
    (1, 0, False): MOBIUS,
}


@dataclass(frozen=True)
class SpaceClass:
    kind: str
    chi: int
    orientable: bool
    boundary_components: int

    @property
    def closed(self) -> bool:
        return self.boundary_components == 0


def graph_of(c: Complex) -> nx.Graph:
    """1-skeleton as a networkx graph (isolated vertices included)."""
    g = nx.Graph()
    g.add_nodes_from(c.vertices)
    for f in c.faces:
        if len(f) == 2:
            g.add_edge(*f)
    return g


def _triangles_at(c: Complex) -> dict:
    around: dict = {}
    for t in c.facets:
        for v in t:
            around.setdefault(v, []).append(t)
    return around


def _link_graph(v, tris) -> nx.Graph:
    g = nx.Graph()
    for t in tris:
        g.add_edge(*(t - {v}))
    return g


def _orientable(tris: list) -> bool:
    # orient each triangle as a cyclic vertex sequence; neighbours across an
    # edge must traverse it in opposite directions
    orient: dict = {}
    by_edge: dict = {}
    for t in tris:
        for e in combinations(t, 2):
            by_edge.setdefault(frozenset(e), []).append(t)

    def directed(seq):
        return {(seq[0], seq[1]), (seq[1], seq[2]), (seq[2], seq[0])}

    for start in tris:
        if start in orient:
            continue
        orient[start] = tuple(sorted(start, key=label_key))
        stack = [start]
        while stack:
            t = stack.pop()
            arcs = directed(orient[t])
            for e in combinations(t, 2):
                for u in by_edge[frozenset(e)]:
                    if u == t:
                        continue
                    a, b = e if e in arcs else (e[1], e[0])
                    (w,) = u - {a, b}
                    want = (b, a, w)
                    if u in orient:
                        if (b, a) not in directed(orient[u]):
                            return False
                    else:
                        orient[u] = want
                        stack.append(u)
    return True


def classify_surface(c: Complex) -> SpaceClass:
    """Recognise a connected triangulated surface (with or without boundary)."""
    if c.is_void or c.dim != 2 or not c.is_pure:
        raise NotPure("surface classification needs a pure 2-dimensional complex")
    counts = edge_triangle_counts(c)
    for e in sort_faces(counts):
        if counts[e] > 2:
            raise NotASurface(f"edge {fmt_face(e)} lies in {counts[e]} triangles", witness=e)
    around = _triangles_at(c)
    for v in sorted(c.vertices, key=label_key):
        lk = _link_graph(v, around[v])
        degrees = [d for _, d in lk.degree()]
        if not nx.is_connected(lk) or max(degrees) > 2:
            raise NotASurface(f"link of vertex {v!r} is not a path or cycle", witness=v)
    if not nx.is_connected(graph_of(c)):
        raise NotASurface("complex is disconnected")
    tris = c.sorted_facets()
    n_edges = len(counts)
    chi = len(c.vertices) - n_edges + len(tris)
    bgraph = nx.Graph()
    bgraph.add_edges_from(tuple(e) for e, n in counts.items() if n == 1)
    n_boundary = nx.number_connected_components(bgraph)
    orientable = _orientable(tris)
    kind = _TABLE.get((n_boundary, chi, orientable), OTHER)
    return SpaceClass(kind, chi, orientable, n_boundary)


def boundary_cycles(c: Complex) -> list:
    """Boundary components of a surface, each as a 1-dimensional Complex."""
    counts = edge_triangle_counts(c)
    g = nx.Graph()
    g.add_edges_from(tuple(e) for e, n in counts.items() if n == 1)
    comps = [Complex(frozenset(e) for e in g.subgraph(nodes).edges()) for nodes in nx.connected_components(g)]
    return sorted(comps, key=lambda k: min(label_key(v) for v in k.vertices))


@dataclass(frozen=True)
class CornerData:
    v: object
    alpha: Complex
    beta: Complex
    gamma: Complex
    x: object
    y: object
    singular_circle: Complex


def singular_circle(z: Complex) -> Complex:
    counts = edge_triangle_counts(z)
    return Complex(e for e, n in counts.items() if n == 3)


def _link_shape(z: Complex, v) -> tuple[str, nx.Graph]:
    lk = graph_of(link(z, {v}))
    deg = dict(lk.degree())
    threes = [u for u, d in deg.items() if d == 3]
    if not nx.is_connected(lk) or len(threes) != 2 or any(d not in (2, 3) for d in deg.values()):
        return "bad", lk
    return ("dumbbell" if nx.has_bridges(lk) else "theta"), lk


def detect_corner(z: Complex) -> CornerData:
    """Find the distinguished corner of a triangulated dunce hat.

    The corner is the unique vertex of the singular circle whose link is
    two disjoint cycles joined by a path; the other circle vertices have
    theta-shaped links.
    """
    circle = singular_circle(z)
    if circle.is_void:
        raise NoSingularCircle("no edge lies in three triangles")
    candidates = []
    for v in sorted(circle.vertices, key=label_key):
        shape, lk = _link_shape(z, v)
        if shape == "dumbbell":
            candidates.append((v, lk))
    if len(candidates) != 1:
        raise CornerAmbiguous(
            f"{len(candidates)} corner candidates", witness=[v for v, _ in candidates]
        )
    v, lk = candidates[0]
    bridges = list(nx.bridges(lk))
    rest = lk.copy()
    rest.remove_edges_from(bridges)
    x, y = sorted((u for u, d in lk.degree() if d == 3), key=label_key)
    alpha = Complex(frozenset(e) for e in rest.subgraph(nx.node_connected_component(rest, x)).edges())
    beta = Complex(frozenset(e) for e in rest.subgraph(nx.node_connected_component(rest, y)).edges())
    gamma = Complex(frozenset(e) for e in bridges)
    return CornerData(v, alpha, beta, gamma, x, y, circle)


def validate_dunce_hat(c: Complex) -> Verdict:
    """Check the combinatorial signature of a dunce hat triangulation.

    On success the verdict's ``witness`` holds the :class:`CornerData`.
    """
    if c.is_void or c.dim != 2 or not c.is_pure:
        return Verdict(False, "pure", None, "not a pure 2-complex")
    counts = edge_triangle_counts(c)
    for e in sort_faces(counts):
        if counts[e] not in (2, 3):
            return Verdict(False, "edges", e, f"edge {fmt_face(e)} lies in {counts[e]} triangles")
    circle = singular_circle(c)
    if circle.is_void:
        return Verdict(False, "singular", None, "no singular edges")
    cg = graph_of(circle)
    if not nx.is_connected(cg) or any(d != 2 for _, d in cg.degree()):
        return Verdict(False, "singular", None, "singular edges do not form one cycle")
    reduced = -1 + len(c.vertices) - len(counts) + len(c.facets)
    if reduced != 0:
        return Verdict(False, "euler", reduced, f"reduced Euler characteristic {reduced} != 0")
    corners = []
    for v in sorted(c.vertices, key=label_key):
        if v in circle.vertices:
            shape, lk = _link_shape(c, v)
            if shape == "dumbbell":
                corners.append(v)
            elif shape == "theta":
                nbrs = set(cg.neighbors(v))
                if {u for u, d in lk.degree() if d == 3} != nbrs:
                    return Verdict(False, "link", v, f"theta link of {v!r} misplaced")
            else:
                return Verdict(False, "link", v, f"bad link at circle vertex {v!r}")
        else:
            lk = graph_of(link(c, {v}))
            if not nx.is_connected(lk) or any(d != 2 for _, d in lk.degree()):
                return Verdict(False, "link", v, f"link of {v!r} is not a cycle")
    if len(corners) != 1:
        return Verdict(False, "corner", corners, f"{len(corners)} corner candidates")
    return Verdict(True, witness=detect_corner(c))
