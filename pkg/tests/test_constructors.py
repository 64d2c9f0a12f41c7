import random

import networkx as nx
import pytest

from partitionable.complex import EMPTY_FACE, Complex, RelComplex, boundary, h_vector, link, star
from partitionable.constructors import (
    _reduce_mobius,
    decompose_rp2,
    partition_annulus,
    partition_dunce_hat,
    partition_dunce_hat_rel_corner,
    partition_graph_rel_empty,
    partition_mobius_rel_boundary,
    partition_mobius_rel_empty,
    partition_rp2,
    shell_disk_relative,
)
from partitionable.corpus import (
    barycentric_subdivision,
    dunce_grid,
    mobius5,
    prism_annulus,
    random_disk,
    rp2_min,
    subdivide,
)
from partitionable.errors import (
    ClassificationFailure,
    NotADisk,
    NotAGraph,
    NotAMobius,
    NotAnAnnulus,
    NotRP2,
    UpsilonInvalid,
)
from partitionable.partition import interval_stats, scheme_from_shelling, verify_partitioning, verify_shelling
from partitionable.surfaces import MOBIUS, boundary_cycles, classify_surface, graph_of


def iv_pairs(scheme):
    return [(iv.min, iv.max) for iv in scheme]


def boundary_arc(disk, start, length):
    """``length`` consecutive boundary edges starting at the ``start``-th vertex."""
    (cycle,) = boundary_cycles(disk)
    walk = [u for u, _ in nx.find_cycle(graph_of(cycle))]
    n = len(walk)
    length = min(length, n)
    return Complex(frozenset({walk[(start + i) % n], walk[(start + i + 1) % n]}) for i in range(length))


def check(rc, scheme):
    assert verify_partitioning(rc, scheme)
    assert interval_stats(scheme, rc.total.dim + 1) == h_vector(rc)


def test_single_triangle_relative_to_an_edge():
    order = shell_disk_relative(Complex([(1, 2, 3)]), Complex([(1, 2)]))
    assert list(order) == [frozenset({1, 2, 3})]
    scheme = scheme_from_shelling(RelComplex(Complex([(1, 2, 3)]), Complex([(1, 2)])), order)
    assert iv_pairs(scheme) == [(frozenset({3}), frozenset({1, 2, 3}))]


@pytest.mark.parametrize("k", range(2, 9))
def test_fans(k):
    fan = Complex((0, i, i + 1) for i in range(1, k + 1))
    for upsilon in (Complex([(0, 1)]), Complex([(1, 2)]), boundary_arc(fan, 0, k)):
        order = shell_disk_relative(fan, upsilon)
        assert verify_shelling(RelComplex(fan, upsilon), order)


def test_disk_relative_to_whole_boundary():
    d = random_disk(11, 15)
    order = shell_disk_relative(d, boundary(d))
    assert verify_shelling(RelComplex(d, boundary(d)), order)


@pytest.mark.parametrize("seed", range(25))
def test_random_disks_random_arcs(seed):
    rng = random.Random(seed)
    d = random_disk(seed, rng.randint(1, 40))
    arc = boundary_arc(d, rng.randrange(50), rng.randint(1, 50))
    order = shell_disk_relative(d, arc)
    assert verify_shelling(RelComplex(d, arc), order)


def test_disk_errors():
    d = random_disk(3, 10)
    with pytest.raises(UpsilonInvalid):
        shell_disk_relative(d, Complex([]))
    half = len(boundary(d).facets) // 2
    assert half >= 2
    two = boundary_arc(d, 0, 1).facets | boundary_arc(d, half, 1).facets
    with pytest.raises(UpsilonInvalid):
        shell_disk_relative(d, Complex(two))
    with pytest.raises(NotADisk):
        shell_disk_relative(mobius5(), Complex([(1, 2)]))


@pytest.mark.parametrize("r", [0, 1, 2])
def test_mobius_both_modes(r):
    m = subdivide(mobius5(), r)
    check(RelComplex(m, boundary(m)), partition_mobius_rel_boundary(m))
    check(RelComplex(m, EMPTY_FACE), partition_mobius_rel_empty(m))


def test_mobius_reduction_keeps_a_strip():
    m = subdivide(mobius5(), 1)
    cur, (cr, locus), steps = _reduce_mobius(m)
    for sigma, prev in steps:
        assert classify_surface(prev).kind == MOBIUS
        assert sigma in prev.facets
    assert classify_surface(cur).kind == MOBIUS
    assert len(locus.facets) == 1


def test_mobius_rejects_other_surfaces():
    with pytest.raises(NotAMobius):
        partition_mobius_rel_boundary(prism_annulus())


@pytest.mark.parametrize("r", [0, 1])
def test_annulus_modes(r):
    a = subdivide(prism_annulus(), r)
    c1, c2 = boundary_cycles(a)
    check(RelComplex(a, EMPTY_FACE), partition_annulus(a, "rel_empty"))
    check(RelComplex(a, boundary(a)), partition_annulus(a, "rel_full_boundary"))
    check(RelComplex(a, c1), partition_annulus(a, "rel_one_cycle"))
    check(RelComplex(a, c2), partition_annulus(a, "rel_one_cycle", c2))


def test_annulus_errors():
    a = prism_annulus()
    with pytest.raises(NotAnAnnulus):
        partition_annulus(a, "rel_one_cycle", Complex([(1, 2)]))
    with pytest.raises(ValueError):
        partition_annulus(a, "sideways")
    with pytest.raises(NotAnAnnulus):
        partition_annulus(mobius5())


def test_graph_cycle():
    g = Complex([(1, 2), (2, 3), (3, 1)])
    res = partition_graph_rel_empty(g)
    assert res
    check(RelComplex(g, EMPTY_FACE), res.scheme)


def test_graph_tree_component_is_reported():
    g = Complex([(1, 2), (2, 3), (3, 1), (7, 8), (8, 9)])
    res = partition_graph_rel_empty(g)
    assert not res
    assert res.reason == "tree component"
    assert res.witness == [7, 8, 9]


def test_graph_theta_and_pendant():
    theta = Complex([(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (3, 5), (5, 6)])
    res = partition_graph_rel_empty(theta)
    check(RelComplex(theta, EMPTY_FACE), res.scheme)


def test_graph_rejects_triangles():
    with pytest.raises(NotAGraph):
        partition_graph_rel_empty(Complex([(1, 2, 3)]))


def test_rp2_decomposition():
    p = rp2_min()
    m = decompose_rp2(p)
    (sigma,) = p.facets - m.facets
    assert classify_surface(m).kind == MOBIUS
    assert boundary(m) == boundary(Complex([sigma]))
    with pytest.raises(NotRP2):
        decompose_rp2(p, (1, 2, 3, 4))
    with pytest.raises(NotRP2):
        decompose_rp2(mobius5())


@pytest.mark.parametrize("r", [0, 1])
def test_rp2_modes(r):
    p = subdivide(rp2_min(), r)
    check(RelComplex(p), partition_rp2(p))
    check(RelComplex(p, EMPTY_FACE), partition_rp2(p, "rel_empty"))


@pytest.mark.parametrize("z", [dunce_grid(3), dunce_grid(4), barycentric_subdivision(dunce_grid(3))])
def test_dunce_hat(z):
    check(RelComplex(z), partition_dunce_hat(z))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dunce_hat_rel_corner(n):
    z = dunce_grid(n)
    rc = RelComplex(z, Complex([("v",)]))
    check(rc, partition_dunce_hat_rel_corner(z))


def test_dunce_scheme_uses_the_corner_cone():
    z = dunce_grid(3)
    scheme = partition_dunce_hat(z)
    cone_facets = star(z, {"v"}).facets
    assert cone_facets <= {iv.max for iv in scheme}
    assert len(link(z, {"v"}).facets) == len(cone_facets)


def test_dunce_rejects_surfaces():
    with pytest.raises(ClassificationFailure):
        partition_dunce_hat(rp2_min())
