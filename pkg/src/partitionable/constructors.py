"""Constructive partitioners for disks, Möbius strips, annuli, graphs, the
real projective plane and the dunce hat.

Every topological step (a cut yields a disk, removing a triangle keeps a
Möbius strip, ...) is checked at runtime with the invariant classifier, and
every returned scheme has been verified against its target.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from .assembly import (
    CutResult,
    Partitioned,
    cut,
    fold_scheme,
    glue_shelling_like,
    make_folding_map,
)
from .complex import (
    EMPTY_FACE,
    Complex,
    RelComplex,
    boundary,
    deletion,
    edge_triangle_counts,
    face_key,
    fmt_face,
    intersection,
    label_key,
    link,
    sort_faces,
    star,
    subfaces,
)
from .errors import (
    ClassificationFailure,
    CutError,
    DiskAssertionFailure,
    NotADisk,
    NotAGraph,
    NotAMobius,
    NotAnAnnulus,
    NotASurface,
    NotPure,
    NotRP2,
    StructureViolation,
    UpsilonInvalid,
)
from .partition import (
    Interval,
    PartitionScheme,
    SearchResult,
    ShellingOrder,
    cone_shelling,
    scheme_from_shelling,
    shelling_of_graph,
    verify_partitioning,
    verify_shelling,
)
from .surfaces import (
    ANNULUS,
    DISK,
    MOBIUS,
    RP2,
    CornerData,
    boundary_cycles,
    classify_surface,
    detect_corner,
    graph_of,
    validate_dunce_hat,
)

__all__ = [
    "CornerData",
    "decompose_rp2",
    "detect_corner",
    "partition_annulus",
    "partition_dunce_hat",
    "partition_dunce_hat_rel_corner",
    "partition_graph_rel_empty",
    "partition_mobius_rel_boundary",
    "partition_mobius_rel_empty",
    "partition_rp2",
    "shell_disk_relative",
]


def _kind(c: Complex) -> str | None:
    try:
        return classify_surface(c).kind
    except (NotASurface, NotPure):
        return None


def _require(c: Complex, kind: str, error) -> None:
    got = _kind(c)
    if got != kind:
        raise error(f"expected a {kind}, got {got or 'a non-surface'}")


def _edge_components(items: list) -> list:
    """Group triangles (or edges) that are chained by shared edges (or vertices)."""
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    size = len(items[0]) - 1 if items else 0
    owner: dict = {}
    for i, t in enumerate(items):
        for s in combinations(sorted(t, key=label_key), size):
            s = frozenset(s)
            if s in owner:
                parent[find(i)] = find(owner[s])
            else:
                owner[s] = i
    groups: dict = {}
    for i, t in enumerate(items):
        groups.setdefault(find(i), []).append(t)
    comps = [sort_faces(g) for g in groups.values()]
    return sorted(comps, key=lambda g: face_key(g[0]))


# relative disks


def _meets_purely(t: frozenset, done: set) -> bool:
    edges = [t - {v} for v in t if t - {v} in done]
    if not edges:
        return False
    on_edges = frozenset().union(*edges)
    return all(v in on_edges for v in t if frozenset({v}) in done)


def shell_disk_relative(disk: Complex, upsilon: Complex) -> ShellingOrder:
    """Shell a triangulated disk relative to a connected path or cycle of its boundary.

    Repeatedly takes the first triangle (canonical order) of the current
    piece that meets the already-covered part in a pure 1-dimensional
    complex.  Removing it either leaves one smaller disk or splits the
    piece into two disks hinged at a vertex; the first is finished before
    the second is started.
    """
    if _kind(disk) != DISK:
        raise NotADisk("input is not a triangulated disk")
    bd = boundary(disk)
    if (
        upsilon.is_void
        or upsilon.dim != 1
        or not upsilon.is_pure
        or not upsilon.faces <= bd.faces
        or not nx.is_connected(graph_of(upsilon))
    ):
        raise UpsilonInvalid("relative part must be a nonempty connected path or cycle of the boundary")
    done = set(upsilon.faces)
    stack = [disk.sorted_facets()]
    order = []
    while stack:
        piece = stack.pop()
        sigma = next((t for t in piece if _meets_purely(t, done)), None)
        if sigma is None:
            raise StructureViolation("no triangle attaches along a pure 1-dimensional part")
        order.append(sigma)
        done.update(subfaces(sigma))
        rest = [t for t in piece if t != sigma]
        if rest:
            stack.extend(reversed(_edge_components(rest)))
    shelling = ShellingOrder(tuple(order))
    verdict = verify_shelling(RelComplex(disk, upsilon), shelling)
    if not verdict:
        raise StructureViolation(f"disk shelling fails: {verdict.message}", witness=verdict.witness)
    return shelling


def _shell_and_fold(disk, vmap, upsilon, target_total, target_relative) -> PartitionScheme:
    rc = RelComplex(disk, upsilon)
    scheme = scheme_from_shelling(rc, shell_disk_relative(disk, upsilon))
    fm = make_folding_map(rc, vmap, target_total)
    if fm.target.relative != target_relative:
        raise StructureViolation("folded relative part is not the requested one")
    return fold_scheme(fm, scheme)


def _fold_cut(cr: CutResult, locus: Complex, target_total: Complex, target_relative: Complex):
    """Shell the cut disk relative to one sheet of the locus plus the lifted
    target edges, then fold back."""
    disk, vmap = cr.complex, cr.vertex_map
    bd_edges = boundary(disk).facets

    def img(e):
        return frozenset(vmap[v] for v in e)

    locus_edges = {f for f in locus.faces if len(f) == 2}
    sheets = _edge_components([e for e in bd_edges if img(e) in locus_edges])
    if len(sheets) != 2:
        raise StructureViolation(f"cut locus lifts to {len(sheets)} sheets, expected 2")
    target_edges = {f for f in target_relative.faces if len(f) == 2}
    upsilon = Complex([e for e in bd_edges if img(e) in target_edges] + sheets[0])
    return _shell_and_fold(disk, vmap, upsilon, target_total, target_relative)


# Möbius strips


def _boundary_sets(c: Complex):
    counts = edge_triangle_counts(c)
    edges = {e for e, n in counts.items() if n == 1}
    return edges, frozenset().union(*edges) if edges else frozenset()


def _mobius_base(c: Complex):
    """A triangle with one boundary edge and all vertices on the boundary
    whose interior edge cuts the strip into a disk."""
    bedges, bverts = _boundary_sets(c)
    for t in c.sorted_facets():
        sides = [t - {v} for v in t]
        on = [e for e in sides if e in bedges]
        if len(on) != 1 or not t <= bverts:
            continue
        for e in sort_faces(e for e in sides if e not in bedges):
            try:
                cr = cut(c, Complex([e]))
            except CutError:
                continue
            if _kind(cr.complex) == DISK:
                return cr, Complex([e])
    return None


def _mobius_removal(c: Complex):
    bedges, bverts = _boundary_sets(c)
    for t in c.sorted_facets():
        on = [t - {v} for v in t if t - {v} in bedges]
        if len(on) == 1:
            (opposite,) = t - on[0]
            if opposite in bverts:
                continue
        elif len(on) != 2:
            continue
        rest = Complex(c.facets - {t})
        if _kind(rest) == MOBIUS:
            return t, rest
    return None


def _reduce_mobius(m: Complex):
    _require(m, MOBIUS, NotAMobius)
    steps = []
    cur = m
    while True:
        base = _mobius_base(cur)
        if base is not None:
            return cur, base, steps
        found = _mobius_removal(cur)
        if found is None:
            raise StructureViolation("no triangle can be cut through or removed", witness=cur)
        sigma, rest = found
        steps.append((sigma, cur))
        cur = rest


def partition_mobius_rel_boundary(m: Complex) -> PartitionScheme:
    cur, (cr, locus), steps = _reduce_mobius(m)
    scheme = _fold_cut(cr, locus, cur, boundary(cur))
    for sigma, prev in reversed(steps):
        bprev = boundary(prev)
        tri = Complex([sigma])
        a = Partitioned.from_shelling(RelComplex(tri, intersection(tri, bprev)), [sigma])
        b_gamma = Complex(e for e in bprev.facets if not e <= sigma)
        scheme = glue_shelling_like(a, cur, b_gamma, b_scheme=scheme).scheme
        cur = prev
    return scheme


def partition_mobius_rel_empty(m: Complex) -> PartitionScheme:
    cur, (cr, locus), steps = _reduce_mobius(m)
    scheme = _fold_cut(cr, locus, cur, EMPTY_FACE)
    for sigma, prev in reversed(steps):
        a = Partitioned(RelComplex(cur, EMPTY_FACE), scheme)
        scheme = glue_shelling_like(a, Complex([sigma])).scheme
        cur = prev
    return scheme


# annuli


def _closest_path(g: nx.Graph, sources, targets) -> list:
    """Shortest path from one vertex set to another; ties go to the smallest
    source, then the smallest target, then the first breadth-first route."""
    targets = set(targets)
    best = None
    for s in sorted(sources, key=label_key):
        pred = {s: None}
        frontier = [s]
        while frontier:
            hits = [w for w in frontier if w in targets]
            if hits:
                path = _walk(pred, min(hits, key=label_key))
                if best is None or len(path) < len(best):
                    best = path
                break
            nxt = []
            for u in frontier:
                for w in sorted(g.neighbors(u), key=label_key):
                    if w not in pred:
                        pred[w] = u
                        nxt.append(w)
            frontier = nxt
    return best


def _walk(pred, w) -> list:
    path = [w]
    while pred[path[-1]] is not None:
        path.append(pred[path[-1]])
    return path[::-1]


ANNULUS_MODES = ("rel_empty", "rel_full_boundary", "rel_one_cycle")


def partition_annulus(a: Complex, mode: str = "rel_empty", cycle: Complex | None = None) -> PartitionScheme:
    """Cut along a shortest path between the boundary cycles, shell, fold back.

    ``mode`` is ``rel_empty`` (relative to ``{∅}``), ``rel_full_boundary`` or
    ``rel_one_cycle``; the last needs ``cycle``, one boundary component
    (default: the one with the smallest vertex).
    """
    _require(a, ANNULUS, NotAnAnnulus)
    c1, c2 = boundary_cycles(a)
    if mode == "rel_empty":
        target = EMPTY_FACE
    elif mode == "rel_full_boundary":
        target = boundary(a)
    elif mode == "rel_one_cycle":
        target = c1 if cycle is None else cycle
        if target not in (c1, c2):
            raise NotAnAnnulus("given cycle is not a boundary component")
    else:
        raise ValueError(f"unknown annulus mode {mode!r}")
    path = _closest_path(graph_of(a), c1.vertices, c2.vertices)
    locus = Complex(frozenset(p) for p in zip(path, path[1:]))
    cr = cut(a, locus)
    if _kind(cr.complex) != DISK:
        raise StructureViolation("cutting the annulus did not give a disk")
    return _fold_cut(cr, locus, a, target)


# graphs


def partition_graph_rel_empty(g: Complex) -> SearchResult:
    """Partition a graph relative to ``{∅}``, or explain why that is impossible.

    Impossible exactly when some connected component is a tree; the
    result then carries the tree's vertices as witness.
    """
    if g.is_void or g.dim != 1 or not g.is_pure:
        raise NotAGraph("expected a pure 1-dimensional complex")
    full = graph_of(g)
    intervals = []
    for comp in sorted(nx.connected_components(full), key=lambda s: min(map(label_key, s))):
        sub = full.subgraph(comp)
        if sub.number_of_edges() == len(comp) - 1:
            witness = sorted(comp, key=label_key)
            return SearchResult(reason="tree component", witness=witness)
        on_cycle = {v for e in sub.edges() for v in e if not _is_bridge(sub, e)}
        root = min(on_cycle, key=label_key)
        ordered = nx.Graph()
        ordered.add_nodes_from(sorted(comp, key=label_key))
        ordered.add_edges_from(sorted((tuple(sorted(e, key=label_key)) for e in sub.edges()),
                                      key=lambda e: (label_key(e[0]), label_key(e[1]))))
        tree = list(nx.dfs_edges(ordered, source=root))
        tree_edges = {frozenset(e) for e in tree}
        for parent, child in tree:
            intervals.append(Interval(frozenset({child}), frozenset({parent, child})))
        extra = sort_faces(frozenset(e) for e in sub.edges() if frozenset(e) not in tree_edges)
        at_root = next(e for e in extra if root in e)
        intervals.append(Interval(frozenset({root}), at_root))
        intervals.extend(Interval(e, e) for e in extra if e != at_root)
    scheme = PartitionScheme(tuple(intervals))
    verdict = verify_partitioning(RelComplex(g, EMPTY_FACE), scheme)
    if not verdict:
        raise StructureViolation(f"graph scheme fails: {verdict.message}")
    return SearchResult(scheme=scheme)


def _is_bridge(g: nx.Graph, e) -> bool:
    h = nx.Graph(g)
    h.remove_edge(*e)
    return not nx.has_path(h, *e)


# projective plane


def decompose_rp2(p: Complex, sigma=None) -> Complex:
    """The Möbius strip left after removing one facet of a projective plane."""
    _require(p, RP2, NotRP2)
    sigma = p.sorted_facets()[0] if sigma is None else frozenset(sigma)
    if sigma not in p.facets:
        raise NotRP2(f"{fmt_face(sigma)} is not a facet", witness=sigma)
    m = Complex(p.facets - {sigma})
    if _kind(m) != MOBIUS:
        raise ClassificationFailure("removing a facet did not leave a Möbius strip")
    if boundary(m) != boundary(Complex([sigma])):
        raise ClassificationFailure("strip boundary differs from the removed triangle's boundary")
    return m


def partition_rp2(p: Complex, mode: str = "plain", sigma=None) -> PartitionScheme:
    """``plain`` partitions ``p`` itself; ``rel_empty`` partitions ``(p, {∅})``."""
    m = decompose_rp2(p, sigma)
    (sigma,) = p.facets - m.facets
    tri = Complex([sigma])
    if mode == "plain":
        a = Partitioned.from_shelling(RelComplex(tri), [sigma])
        out = glue_shelling_like(a, m, b_scheme=partition_mobius_rel_boundary(m))
    elif mode == "rel_empty":
        a = Partitioned(RelComplex(m, EMPTY_FACE), partition_mobius_rel_empty(m))
        out = glue_shelling_like(a, tri)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out.scheme


# dunce hat


def _checked_corner(z: Complex) -> CornerData:
    verdict = validate_dunce_hat(z)
    if not verdict:
        raise ClassificationFailure(f"not a dunce hat: {verdict.message}", witness=verdict.witness)
    return verdict.witness


def _assert_disk(c: Complex, stage: str) -> None:
    if _kind(c) != DISK:
        raise DiskAssertionFailure(f"{stage}: expected a disk")


def partition_dunce_hat(z: Complex) -> PartitionScheme:
    """Cone over the corner's link, glued to the corner's deletion.

    The deletion is handled by cutting along the singular circle, removing
    the copies of the corner, and shelling the resulting disk relative to
    its whole boundary but one side.
    """
    corner = _checked_corner(z)
    v = corner.v
    cr = cut(z, corner.singular_circle)
    _assert_disk(cr.complex, "cut along the singular circle")
    vmap = cr.vertex_map
    d = cr.complex
    for w in sorted((w for w in vmap if vmap[w] == v), key=label_key):
        d = deletion(d, {w})
        _assert_disk(d, f"after deleting {w!r}")
    lk = link(z, {v})
    circle_edges = {f for f in corner.singular_circle.faces if len(f) == 2}
    bd_edges = boundary(d).facets

    def img(e):
        return frozenset(vmap[u] for u in e)

    sides = _edge_components(
        [e for e in bd_edges if img(e) in circle_edges and img(e) not in lk.faces]
    )
    if len(sides) != 3:
        raise DiskAssertionFailure(f"expected three sides of the circle, found {len(sides)}")
    free = set(sides[0])
    upsilon = Complex(e for e in bd_edges if e not in free)
    del_v = deletion(z, {v})
    folded = _shell_and_fold(d, vmap, upsilon, del_v, lk)
    order = shelling_of_graph(lk)
    if order is None:
        raise StructureViolation("link of the corner is disconnected")
    a = Partitioned.from_shelling(RelComplex(star(z, {v})), cone_shelling(order, v))
    return glue_shelling_like(a, del_v, b_scheme=folded).scheme


def partition_dunce_hat_rel_corner(z: Complex) -> PartitionScheme:
    """A scheme for the dunce hat relative to its corner vertex."""
    corner = _checked_corner(z)
    v = corner.v
    cr = cut(z, corner.singular_circle)
    _assert_disk(cr.complex, "cut along the singular circle")
    vmap = cr.vertex_map
    copies = {w for w in vmap if vmap[w] == v}
    bd_edges = boundary(cr.complex).sorted_facets()
    # split the boundary cycle at the corner copies
    g = nx.Graph()
    for e in bd_edges:
        g.add_node(e)
    for e, f in combinations(bd_edges, 2):
        if (e & f) - copies:
            g.add_edge(e, f)
    sides = sorted((sort_faces(s) for s in nx.connected_components(g)), key=lambda s: face_key(s[0]))
    if len(sides) != 3:
        raise DiskAssertionFailure(f"expected three sides, found {len(sides)}")
    upsilon = Complex(sides[1] + sides[2])
    return _shell_and_fold(cr.complex, vmap, upsilon, z, Complex([(v,)]))
