import random

import pytest

from partitionable.assembly import (
    Partitioned,
    cut,
    fold_scheme,
    glue,
    glue_shelling_like,
    make_folding_map,
    transfer_scheme,
)
from partitionable.complex import (
    EMPTY_FACE,
    VOID,
    Complex,
    RelComplex,
    boundary,
    h_vector,
    intersection,
    minimal_representation,
)
from partitionable.corpus import RUDIN_B_SCHEME, dunce_grid, mobius5, rudin, rudin_a, rudin_a_shelling, rudin_b
from partitionable.errors import (
    Degenerate,
    F1Violation,
    F2Violation,
    FacetContainment,
    G1Violation,
    G2NotSubcomplex,
    LocusDimension,
    LocusNotSubcomplex,
    NotAPosetIsomorphism,
    NotSurjective,
    SubsetPreconditionViolation,
)
from partitionable.partition import (
    Interval,
    PartitionScheme,
    decide_partitionable,
    interval_stats,
    verify_partitioning,
    verify_shelling,
)
from partitionable.surfaces import DISK, classify_surface, singular_circle


def iv(lo, hi):
    return Interval(frozenset(lo), frozenset(hi))


def path(n):
    return Complex((i, i + 1) for i in range(1, n))


def path_scheme(n):
    return PartitionScheme(tuple(iv((i,), (i, i + 1)) for i in range(1, n)))


def test_glue_spanning_tree_with_extra_edge():
    # (T, <v>) and (H, V(H) - v) glue to a triangle graph relative to {∅}
    tree = Complex([(1, 2), (2, 3)])
    a = Partitioned(RelComplex(tree, Complex([(1,)])), PartitionScheme((iv((2,), (1, 2)), iv((3,), (2, 3)))))
    extra = Complex([(1, 3)])
    b = Partitioned(RelComplex(extra, Complex([(3,)])), PartitionScheme((iv((1,), (1, 3)),)))
    out = glue(a, b)
    assert out.complex.relative == EMPTY_FACE
    assert verify_partitioning(RelComplex(Complex([(1, 2), (2, 3), (1, 3)]), EMPTY_FACE), out.scheme)


def test_glue_with_void_partner():
    tri = Complex([(1, 2, 3)])
    a = Partitioned(RelComplex(tri), PartitionScheme((iv((), (1, 2, 3)),)))
    b = Partitioned(RelComplex(VOID), PartitionScheme(()))
    out = glue(a, b)
    assert out.complex == a.complex and out.scheme == a.scheme


def test_glue_g1_violation():
    a = Partitioned(RelComplex(Complex([(1, 2)])), PartitionScheme((iv((), (1, 2)),)))
    b = Partitioned(RelComplex(Complex([(2, 3)])), PartitionScheme((iv((), (2, 3)),)))
    with pytest.raises(G1Violation) as info:
        glue(a, b)
    assert info.value.witness == frozenset()


def test_glue_facet_containment():
    a = Partitioned(RelComplex(Complex([(1, 2, 3)])), PartitionScheme((iv((), (1, 2, 3)),)))
    b = Partitioned(
        RelComplex(Complex([(1, 2)]), Complex([(1,), (2,)])), PartitionScheme((iv((1, 2), (1, 2)),))
    )
    with pytest.raises(FacetContainment) as info:
        glue(a, b)
    assert info.value.witness == (frozenset({1, 2}), frozenset({1, 2, 3}))


def test_glue_g2_violation():
    # ∅ is shared and only in Γa, so it leaves Σ while the vertex 1 stays
    a = Partitioned(RelComplex(Complex([(1, 2)]), Complex([(1,)])), PartitionScheme((iv((2,), (1, 2)),)))
    b = Partitioned(RelComplex(Complex([(3, 4)])), PartitionScheme((iv((), (3, 4)),)))
    with pytest.raises(G2NotSubcomplex) as info:
        glue(a, b)
    assert info.value.witness == frozenset()


def test_glue_relative_union():
    a = Partitioned(RelComplex(Complex([(1, 2)]), Complex([(1,)])), PartitionScheme((iv((2,), (1, 2)),)))
    b = Partitioned(RelComplex(Complex([(3, 4)]), Complex([(3,)])), PartitionScheme((iv((4,), (3, 4)),)))
    out = glue(a, b)
    assert out.complex.relative == Complex([(1,), (3,)])


def _random_pair(rng):
    verts = list(range(7))
    while True:
        da = Complex(tuple(rng.sample(verts, 3)) for _ in range(rng.randint(1, 4)))
        db = Complex(tuple(rng.sample(verts, 3)) for _ in range(rng.randint(1, 4)))
        if da.facets & db.facets:
            continue
        ga_pool = sorted(da.faces, key=sorted)
        ga = Complex(rng.sample(ga_pool, rng.randint(0, 2))) if rng.random() < 0.7 else VOID
        shared = Complex.from_faces(da.faces & db.faces)
        gb_extra = [f for f in db.faces if f not in da.faces]
        gb = Complex(list(shared.facets) + rng.sample(sorted(gb_extra, key=sorted), min(len(gb_extra), rng.randint(0, 1))))
        if not (da.faces & gb.faces) <= ga.faces | shared.faces:
            continue
        ra, rb = RelComplex(da, ga), RelComplex(db, gb)
        if (ra.faces & rb.faces) or not ra.facets or not rb.facets:
            continue
        sa, sb = decide_partitionable(ra), decide_partitionable(rb)
        if sa and sb:
            return Partitioned(ra, sa.scheme), Partitioned(rb, sb.scheme)


def test_glue_random_pairs_verify_and_add_h():
    rng = random.Random(11)
    done = 0
    for _ in range(60):
        a, b = _random_pair(rng)
        try:
            out = glue(a, b)
        except (G1Violation, G2NotSubcomplex):
            continue
        done += 1
        assert verify_partitioning(out.complex, out.scheme)
        h = [x + y for x, y in zip(h_vector(a.complex, 3), h_vector(b.complex, 3))]
        assert h_vector(out.complex, 3) == tuple(h)
        assert interval_stats(out.scheme, 3) == tuple(h)
    assert done >= 30


def test_glue_shelling_like_rudin():
    a = Partitioned.from_shelling(RelComplex(rudin_a()), rudin_a_shelling())
    out = glue_shelling_like(a, rudin_b(), b_scheme=RUDIN_B_SCHEME)
    assert out.complex == RelComplex(rudin())
    assert verify_partitioning(RelComplex(rudin()), out.scheme)
    assert out.shelling is None


def test_glue_shelling_like_replays_shelling_step():
    order = list(rudin_a_shelling())
    head = Complex(order[:-1])
    a = Partitioned.from_shelling(RelComplex(head), order[:-1])
    out = glue_shelling_like(a, Complex([order[-1]]))
    assert out.shelling is not None
    assert verify_shelling(RelComplex(rudin_a()), out.shelling)


def test_glue_shelling_like_precondition():
    a = Partitioned(RelComplex(Complex([(1, 2)])), PartitionScheme((iv((), (1, 2)),)))
    with pytest.raises(SubsetPreconditionViolation):
        glue_shelling_like(a, Complex([(2, 3)]), b_gamma=Complex([(2,)]))


def test_transfer_scheme_cone_over_cycle():
    cycle = Complex([(1, 2), (2, 3), (3, 4), (1, 4)])
    source = Partitioned(
        RelComplex(cycle),
        PartitionScheme((iv((), (1, 2)), iv((3,), (2, 3)), iv((4,), (3, 4)), iv((1, 4), (1, 4)))),
    )
    cone5 = Complex(e | {5} for e in cycle.facets)
    target = RelComplex(cone5, cycle)
    iso = {f: f | {5} for f in source.complex.faces}
    out = transfer_scheme(iso, source, target)
    assert set(out) == {iv((5,), (1, 2, 5)), iv((3, 5), (2, 3, 5)), iv((4, 5), (3, 4, 5)), iv((1, 4, 5), (1, 4, 5))}


def test_transfer_identity_and_minimal_representation():
    rc = RelComplex(Complex([(1, 2, 3), (2, 3, 4)]), Complex([(2, 3, 4)]))
    res = decide_partitionable(rc)
    assert minimal_representation(rc).total == Complex([(1, 2, 3)])
    src = Partitioned(rc, res.scheme)
    ident = {f: f for f in rc.faces}
    assert transfer_scheme(ident, src, rc) == res.scheme
    assert transfer_scheme(ident, src, minimal_representation(rc)) == res.scheme


def test_transfer_rejects_non_isomorphism():
    rc = RelComplex(Complex([(1, 2)]))
    src = Partitioned(rc, PartitionScheme((iv((), (1, 2)),)))
    swap = {f: f for f in rc.faces}
    swap[frozenset({1})] = frozenset({1, 2})
    swap[frozenset({1, 2})] = frozenset({1})
    with pytest.raises(NotAPosetIsomorphism):
        transfer_scheme(swap, src, rc)


@pytest.mark.parametrize("n", range(4, 13))
def test_fold_path_to_cycle(n):
    src = RelComplex(path(n), Complex([(n,)]))
    assert verify_partitioning(src, path_scheme(n))
    vmap = {i: i for i in range(1, n)}
    vmap[n] = 1
    fm = make_folding_map(src, vmap)
    cyc = Complex([(i, i + 1) for i in range(1, n - 1)] + [(n - 1, 1)])
    assert fm.target == RelComplex(cyc, EMPTY_FACE)
    out = fold_scheme(fm, path_scheme(n))
    assert len(out) == n - 1
    assert verify_partitioning(fm.target, out)


@pytest.mark.parametrize("n", range(4, 9))
def test_fold_path_to_neighbour_is_degenerate(n):
    src = RelComplex(path(n), Complex([(n,)]))
    vmap = {i: i for i in range(1, n)}
    vmap[n] = n - 1
    with pytest.raises(Degenerate):
        make_folding_map(src, vmap)
    vmap[n] = n - 2
    with pytest.raises(F1Violation):
        make_folding_map(src, vmap)


def test_fold_to_middle_vertex_keeps_scheme():
    n = 6
    src = RelComplex(path(n), Complex([(n,)]))
    vmap = {i: i for i in range(1, n)}
    vmap[n] = 2
    fm = make_folding_map(src, vmap)
    assert verify_partitioning(fm.target, fold_scheme(fm, path_scheme(n)))


def test_identity_fold():
    src = RelComplex(path(5), Complex([(5,)]))
    fm = make_folding_map(src, {i: i for i in range(1, 6)})
    assert fm.target == src
    assert fold_scheme(fm, path_scheme(5)) == path_scheme(5)


def test_folding_errors():
    src = RelComplex(Complex([(1, 2), (3, 4)]), Complex([(3, 4)]))
    with pytest.raises(NotSurjective):
        make_folding_map(src, {1: 1, 2: 2, 3: 3, 4: 4}, Complex([(1, 2), (3, 4), (5, 6)]))
    # F2: a free facet folds onto a face that is not a facet of the target
    src = RelComplex(Complex([(1, 2, 3), (4, 5)]), Complex([(1, 2), (4,), (5,)]))
    with pytest.raises(F2Violation):
        make_folding_map(src, {1: 1, 2: 2, 3: 3, 4: 1, 5: 2})


def test_cut_boundary_edge_changes_nothing():
    m = mobius5()
    e = sorted(boundary(m).facets, key=sorted)[0]
    res = cut(m, Complex([e]))
    assert res.complex == m


def test_cut_mobius_interior_edge_gives_disk():
    m = mobius5()
    res = cut(m, Complex([(1, 2)]))
    assert classify_surface(res.complex).kind == DISK
    assert len(res.complex.vertices) == 7
    images = {frozenset(res.vertex_map[v] for v in f) for f in res.complex.faces}
    assert images == m.faces
    sheet = [f for f in res.complex.faces if len(f) == 2 and {res.vertex_map[v] for v in f} == {1, 2}]
    assert len(sheet) == 2
    fm = res.folding_map(Complex([sheet[0]]), m)
    assert fm.target.relative == Complex([()])


def test_cut_dunce_hat_gives_triangle_disk():
    z = dunce_grid(3)
    res = cut(z, singular_circle(z))
    assert classify_surface(res.complex).kind == DISK
    assert sum(1 for v in res.vertex_map if res.vertex_map[v] == "v") == 3


def test_cut_errors():
    m = mobius5()
    with pytest.raises(LocusNotSubcomplex):
        cut(m, Complex([(1, 9)]))
    with pytest.raises(LocusDimension):
        cut(m, Complex([(1,)]))
