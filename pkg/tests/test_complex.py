from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partitionable.complex import (
    EMPTY_FACE,
    VOID,
    Complex,
    RelComplex,
    boundary,
    closure,
    cone,
    deletion,
    euler_char,
    f_vector,
    faces,
    fmt_face,
    h_from_f,
    h_vector,
    intersection,
    is_subcomplex,
    label_key,
    link,
    minimal_representation,
    star,
    union,
)
from partitionable.corpus import bowtie, fig1_graph, mobius5, rudin
from partitionable.errors import (
    ApexCollision,
    FaceNotInComplex,
    NonPseudomanifold,
    NotPure,
    RelativeNotSubcomplex,
)


def h_by_polynomial(f):
    # sum f_{i-1} (t-1)^{d-i} = sum h_i t^{d-i}, expanded with numpy
    d = len(f) - 1
    total = np.zeros(d + 1, dtype=object)
    for i, fi in enumerate(f):
        poly = np.array([1], dtype=object)
        for _ in range(d - i):
            poly = np.convolve(poly, np.array([1, -1], dtype=object))
        total[i:] += fi * poly
    return tuple(int(x) for x in total)


small_complexes = st.lists(
    st.frozensets(st.integers(0, 6), min_size=1, max_size=4), min_size=1, max_size=6
).map(Complex)


def test_void_and_empty_face_differ():
    assert VOID.faces == frozenset()
    assert EMPTY_FACE.faces == {frozenset()}
    assert VOID != EMPTY_FACE
    assert VOID.dim == EMPTY_FACE.dim == -1


def test_closure_of_bowtie():
    c = closure([(1, 2, 5), (3, 4, 5)])
    assert len(c.faces) == 14
    assert f_vector(c) == (1, 5, 6, 2)
    assert c == bowtie()


def test_facets_are_maximal_only():
    c = Complex([(1, 2), (1, 2, 3), (2,)])
    assert c.facets == {frozenset({1, 2, 3})}


def test_label_order_is_total_over_mixed_labels():
    labels = [3, "a", (1, 2), frozenset({1}), 0, "B"]
    keys = sorted(labels, key=label_key)
    assert keys == [0, 3, "B", "a", (1, 2), frozenset({1})]


def test_faces_canonical_order():
    c = Complex([(2, 1)])
    assert faces(c) == [frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})]
    assert faces(c, 0) == [frozenset({1}), frozenset({2})]


def test_fmt_face():
    assert fmt_face(frozenset({5, 1, 2})) == "125"
    assert fmt_face(frozenset()) == "∅"
    assert fmt_face(frozenset({10, 2})) == "{2,10}"


def test_link_star_deletion():
    c = bowtie()
    assert link(c, {5}) == Complex([(1, 2), (3, 4)])
    assert star(c, {1}) == Complex([(1, 2, 5)])
    assert deletion(c, {5}) == Complex([(1, 2), (3, 4)])
    assert link(c, ()) == c
    with pytest.raises(FaceNotInComplex):
        link(c, {1, 3})


def test_cone():
    c = Complex([(1, 2), (2, 3)])
    assert cone(c, 0) == Complex([(0, 1, 2), (0, 2, 3)])
    assert cone(VOID, 9) == Complex([(9,)])
    with pytest.raises(ApexCollision):
        cone(c, 1)


def test_union_intersection_subcomplex():
    a = Complex([(1, 2, 3)])
    b = Complex([(2, 3, 4)])
    assert intersection(a, b) == Complex([(2, 3)])
    assert is_subcomplex(intersection(a, b), union(a, b))
    assert not is_subcomplex(a, b)


def test_relative_requires_subcomplex():
    with pytest.raises(RelativeNotSubcomplex):
        RelComplex(Complex([(1, 2)]), Complex([(3,)]))


def test_relative_faces_and_facets():
    rc = RelComplex(Complex([(1, 2, 3)]), Complex([(1, 2)]))
    assert rc.faces == {frozenset({3}), frozenset({1, 3}), frozenset({2, 3}), frozenset({1, 2, 3})}
    assert rc.facets == {frozenset({1, 2, 3})}


def test_known_vectors():
    assert f_vector(rudin()) == (1, 14, 66, 94, 41)
    assert h_vector(rudin()) == (1, 10, 30, 0, 0)
    assert h_vector(bowtie()) == (1, 2, -1, 0)
    assert h_vector(fig1_graph()) == (1, 3, 0)
    m = mobius5()
    assert f_vector(RelComplex(m, EMPTY_FACE)) == (0, 5, 10, 5)
    assert h_vector(RelComplex(m, boundary(m))) == (0, 0, 5, 0)


def test_h_of_void_is_zero():
    assert h_vector(VOID, 2) == (0, 0, 0)


@settings(max_examples=80, deadline=None)
@given(small_complexes)
def test_h_matches_polynomial_oracle(c):
    f = f_vector(c)
    assert h_from_f(f) == h_by_polynomial(f)
    assert sum(h_from_f(f)) == f[-1]


@settings(max_examples=60, deadline=None)
@given(small_complexes)
def test_reduced_euler_characteristic(c):
    f = f_vector(c)
    assert euler_char(c) == sum((-1) ** (i - 1) for i, n in enumerate(f) for _ in range(n))
    assert euler_char(VOID) == 0


def test_minimal_representation_keeps_faces():
    rc = RelComplex(Complex([(1, 2, 3), (3, 4)]), Complex([(3, 4)]))
    mr = minimal_representation(rc)
    assert mr.faces == rc.faces
    assert mr.total == Complex([(1, 2, 3)])


def test_boundary():
    m = mobius5()
    assert len(boundary(m).facets) == 5
    with pytest.raises(NotPure):
        boundary(Complex([(1, 2, 3), (3, 4)]))
    with pytest.raises(NonPseudomanifold):
        boundary(Complex([(0, 1, 2), (0, 1, 3), (0, 1, 4)]))
    assert boundary(VOID) == VOID


def test_h_formula_single_simplex():
    for d in range(1, 5):
        c = Complex([tuple(range(d))])
        assert h_vector(c) == (1,) + (0,) * d
        assert f_vector(c) == tuple(comb(d, i) for i in range(d + 1))
