"""Built-in complexes and generators of further triangulations."""

from __future__ import annotations

import math
import random
from itertools import combinations, permutations

from .complex import Complex, RelComplex, face_key, intersection, sort_faces, union
from .errors import NotASurface, SimplicialityFailure, UnknownName
from .partition import Interval, PartitionScheme, ShellingOrder
from .surfaces import DISK, MOBIUS, RP2, classify_surface, validate_dunce_hat


def _label(ch: str):
    return int(ch) if ch.isdigit() else ch


def compact(words: str) -> list:
    """``"BCDE, ABCE"`` -> list of faces, one character per vertex."""
    out = []
    for w in words.replace(",", " ").split():
        out.append(frozenset(_label(ch) for ch in w))
    return out


RUDIN_A_ORDER = compact(
    "BCDE ABCE 9BDE 8CDE 7BCD 58CD 3ABE 36AE 36AB "
    "6ABC 26AC 2ACE 24AE 28CE 248E 268C 48DE 4ADE "
    "458D 458C 68BC 6ADE 69DE 48BC 47BC 17BD 19BD"
)
RUDIN_B_FACETS = compact(
    "137D 139D 39CD 59CD 37CD 347C 569D 347B 37BE 157B 159B 59BE 569E 57BE"
)
RUDIN_AB_ORDER = compact("17B 17D 19B 9BE 7CD 47B 47C 19D 69D 5CD 69E 3BE")
RUDIN_B_SCHEME = PartitionScheme(
    tuple(
        Interval(lo, hi)
        for lo, hi in zip(
            compact("13 15 34 37 39 3C 3D 56 57 59 5B 5E 7E 9C"),
            compact("137D 159B 347B 37BE 139D 347C 37CD 569D 157B 59CD 59BE 569E 57BE 39CD"),
        )
    )
)
FIG1_SCHEME = PartitionScheme(
    (
        Interval(frozenset(), frozenset({1, 2})),
        Interval(frozenset({3}), frozenset({3, 4})),
        Interval(frozenset({4}), frozenset({4, 5})),
        Interval(frozenset({5}), frozenset({3, 5})),
    )
)


def rudin_a() -> Complex:
    return Complex(RUDIN_A_ORDER)


def rudin_b() -> Complex:
    return Complex(RUDIN_B_FACETS)


def rudin() -> Complex:
    return union(rudin_a(), rudin_b())


def rudin_b_relative() -> RelComplex:
    a, b = rudin_a(), rudin_b()
    return RelComplex(b, intersection(a, b))


def rudin_a_shelling() -> ShellingOrder:
    return ShellingOrder(tuple(RUDIN_A_ORDER))


def bowtie() -> Complex:
    return Complex([(1, 2, 5), (3, 4, 5)])


def fig1_graph() -> Complex:
    return Complex([(1, 2), (3, 4), (4, 5), (3, 5)])


def mobius5() -> Complex:
    return _gated(Complex([(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 4, 5), (1, 2, 5)]), MOBIUS)


def prism_annulus() -> Complex:
    """Outer triangle 123, inner triangle 456, six triangles between them."""
    return Complex([(1, 2, 4), (2, 4, 5), (2, 3, 5), (3, 5, 6), (1, 3, 6), (1, 4, 6)])


def _gated(c: Complex, kind: str) -> Complex:
    cls = classify_surface(c)
    if cls.kind != kind:
        raise NotASurface(f"expected {kind}, classified as {cls.kind}")
    return c


def _icosahedron() -> tuple[list, dict]:
    """Triangles of the icosahedron on ``0..11`` and its antipodal map."""
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for a in (-1, 1):
        for b in (-phi, phi):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]

    def d2(p, q):
        return sum((x - y) ** 2 for x, y in zip(p, q))

    adj = {(i, j) for i, j in combinations(range(12), 2) if abs(d2(pts[i], pts[j]) - 4) < 1e-9}
    tris = [t for t in combinations(range(12), 3) if all(p in adj for p in combinations(t, 2))]
    antipode = {}
    for i, j in combinations(range(12), 2):
        if all(abs(x + y) < 1e-9 for x, y in zip(pts[i], pts[j])):
            antipode[i], antipode[j] = j, i
    return tris, antipode


def rp2_min() -> Complex:
    """Antipodal quotient of the icosahedron: 6 vertices, 10 triangles."""
    tris, anti = _icosahedron()
    rep = {i: min(i, anti[i]) for i in range(12)}
    labels = {r: n + 1 for n, r in enumerate(sorted(set(rep.values())))}
    quotient = {frozenset(labels[rep[v]] for v in t) for t in tris}
    if any(len(t) != 3 for t in quotient) or len(quotient) != 10:
        raise SimplicialityFailure("antipodal quotient is not simplicial")
    return _gated(Complex(quotient), RP2)


def dunce_grid(n: int) -> Complex:
    """A dunce hat whose identified side is subdivided into ``n`` edges.

    The big triangle's boundary is a ``3n``-gon ``p_0 .. p_{3n-1}`` with
    corners ``p_0, p_n, p_2n``.  A collar ring ``q_i`` and a central cone
    fill the interior.  The sides are glued along the word ``e e e^{-1}``:
    side one and side two run forwards, side three backwards.
    """
    if n < 1:
        raise SimplicialityFailure("n must be positive")
    m = 3 * n

    def side_label(i):
        i %= m
        k, pos = divmod(i, n)
        if k == 2:
            pos = n - pos
        if pos in (0, n):
            return "v"
        return f"e{pos}"

    tris = []
    for i in range(m):
        j = (i + 1) % m
        tris.append((side_label(i), side_label(j), f"q{i}"))
        tris.append((side_label(j), f"q{i}", f"q{j}"))
        tris.append((f"q{i}", f"q{j}", "c"))
    faces = [frozenset(t) for t in tris]
    if any(len(f) != 3 for f in faces) or len(set(faces)) != len(faces):
        raise SimplicialityFailure(f"identification for n={n} collapses a triangle")
    c = Complex(faces)
    verdict = validate_dunce_hat(c)
    if not verdict:
        raise SimplicialityFailure(f"n={n} does not give a dunce hat: {verdict.message}")
    return c


def barycentric_subdivision(c: Complex, relabel: bool = False) -> Complex:
    """Vertices are the non-empty faces of ``c``; facets are maximal chains.

    With ``relabel`` the new vertices are renamed ``1..N`` in canonical face
    order (useful for writing files).
    """
    facets = []
    for F in c.facets:
        verts = sorted(F, key=lambda v: face_key(frozenset({v})))
        for perm in permutations(verts):
            chain = [frozenset(perm[: k + 1]) for k in range(len(perm))]
            facets.append(frozenset(chain))
    out = Complex(facets)
    if relabel:
        out = relabel_integers(out)
    return out


def relabel_integers(c: Complex, start: int = 1) -> Complex:
    order = sort_faces(frozenset({v}) for v in c.vertices)
    names = {next(iter(f)): start + i for i, f in enumerate(order)}
    return Complex(frozenset(names[v] for v in F) for F in c.facets)


def subdivide(c: Complex, times: int, relabel: bool = True) -> Complex:
    for _ in range(times):
        c = barycentric_subdivision(c, relabel=relabel)
    return c


def random_disk(seed, k: int) -> Complex:
    """A random triangulated disk with exactly ``k`` triangles.

    Grows a single triangle by three disk-preserving moves: attach an ear on
    a boundary edge, stellar-subdivide a triangle, or close a boundary
    corner.
    """
    rng = random.Random(seed)
    tris = {frozenset({0, 1, 2})}
    cycle = [0, 1, 2]  # boundary in cyclic order
    nxt = 3
    while len(tris) < k:
        moves = ["ear"]
        if k - len(tris) >= 2:
            moves.append("stellar")
        closable = [
            i for i in range(len(cycle))
            if len(cycle) > 3
            and not _has_edge(tris, cycle[i - 1], cycle[(i + 1) % len(cycle)])
        ]
        if closable:
            moves.append("close")
        move = rng.choice(moves)
        if move == "ear":
            i = rng.randrange(len(cycle))
            a, b = cycle[i], cycle[(i + 1) % len(cycle)]
            tris.add(frozenset({a, b, nxt}))
            cycle.insert(i + 1, nxt)
            nxt += 1
        elif move == "stellar":
            t = rng.choice(sorted(tris, key=face_key))
            tris.remove(t)
            for e in combinations(t, 2):
                tris.add(frozenset(e) | {nxt})
            nxt += 1
        else:
            i = rng.choice(closable)
            a, w, b = cycle[i - 1], cycle[i], cycle[(i + 1) % len(cycle)]
            tris.add(frozenset({a, w, b}))
            cycle.pop(i)
    return Complex(tris)


def _has_edge(tris, a, b) -> bool:
    e = frozenset({a, b})
    return any(e <= t for t in tris)


def random_graph(seed, n: int, m: int) -> Complex:
    """Uniform simple graph on vertices ``0..n-1`` with ``m`` edges."""
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    edges = rng.sample(pairs, m)
    used = {v for e in edges for v in e}
    return Complex([frozenset(e) for e in edges] + [frozenset({v}) for v in range(n) if v not in used])


_NAMES = {
    "rudin": rudin,
    "rudin_a": rudin_a,
    "rudin_b": rudin_b,
    "rudin_ab_intersection": lambda: Complex(RUDIN_AB_ORDER),
    "rudin_b_relative": rudin_b_relative,
    "bowtie": bowtie,
    "fig1_graph": fig1_graph,
    "mobius5": mobius5,
    "rp2_min": rp2_min,
    "dunce_grid_3": lambda: dunce_grid(3),
    "prism_annulus": prism_annulus,
}

NAMES = tuple(_NAMES)


def corpus(name: str):
    try:
        build = _NAMES[name]
    except KeyError:
        raise UnknownName(f"unknown corpus name {name!r}; known: {', '.join(NAMES)}") from None
    return build()


def is_disk(c: Complex) -> bool:
    try:
        return classify_surface(c).kind == DISK
    except (NotASurface, ValueError):
        return False
