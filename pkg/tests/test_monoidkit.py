import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logdegen import monoidkit as mk
from logdegen.zlin import IntMatrix

vec2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def test_qn_examples():
    Q1 = mk.qn(1)
    assert all(Q1.contains((a, b)) for a in range(6) for b in range(6))
    Q2 = mk.qn(2)
    assert Q2.contains((1, 1)) and not Q2.contains((1, 0))
    for n in range(1, 11):
        Q = mk.qn(n)
        assert tuple(a + b for a, b in zip(Q.q1, Q.q2)) == tuple(n * x for x in Q.q)
    with pytest.raises(ValueError):
        mk.qn(0)


def test_unique_decomposition_examples():
    assert mk.unique_decomposition(mk.qn(4), (1, 1)) == (1, 1, 0)
    assert mk.unique_decomposition(mk.qn(2), (3, 1)) == (1, 1, 1)
    assert mk.unique_decomposition(mk.qn(3), (0, 3)) == (0, 2, 1)
    with pytest.raises(ValueError):
        mk.unique_decomposition(mk.qn(2), (1, 0))


@given(st.integers(1, 6), st.integers(0, 8), st.integers(0, 8), st.sampled_from((1, 2)))
def test_decomposition_round_trip(n, k, m, i):
    Q = mk.qn(n)
    x = mk.recompose(Q, k, i, m)
    dec = mk.unique_decomposition(Q, x)
    assert mk.recompose(Q, *dec) == x
    assert mk.decompositions(Q, x) == [dec]


@given(st.integers(1, 6), st.tuples(st.integers(0, 15), st.integers(0, 15)),
       st.tuples(st.integers(0, 15), st.integers(0, 15)))
def test_qn_closed_under_addition(n, x, y):
    Q = mk.qn(n)
    if Q.contains(x) and Q.contains(y):
        assert Q.contains((x[0] + y[0], x[1] + y[1]))


def test_qn_membership_matches_generator_search():
    for n in range(1, 5):
        Q = mk.qn(n)
        P = Q.monoid()
        for a, b in itertools.product(range(-1, 12), repeat=2):
            assert P.contains((a, b)) == Q.contains((a, b))


def test_faces_examples():
    for n in range(1, 5):
        assert [sorted(f) for f in mk.faces(mk.qn(n).monoid())] == [[], [1], [2], [0, 1, 2]]
    assert len(mk.faces(mk.free_monoid(2))) == 4
    assert len(mk.faces(mk.free_monoid(1))) == 2


def test_face_property_random_pairs():
    rng = random.Random(200)
    Q = mk.qn(3)
    P = Q.monoid()
    gens = P.generators
    for face in mk.faces(P):
        span = [gens[i] for i in face]

        def in_face(v, span=span):
            # a face of a saturated monoid is P intersected with the cone on its generators
            return P.contains(v) and mk.in_cone(span, v)

        for _ in range(200):
            x = mk.recompose(Q, rng.randint(0, 3), rng.choice((1, 2)), rng.randint(0, 3))
            y = mk.recompose(Q, rng.randint(0, 3), rng.choice((1, 2)), rng.randint(0, 3))
            s = (x[0] + y[0], x[1] + y[1])
            if in_face(s):
                assert in_face(x) and in_face(y)


def test_saturation_examples():
    assert mk.is_saturated(mk.qn(3).monoid(), 5)
    assert not mk.is_saturated(mk.numerical_monoid(2, 3))
    assert mk.is_saturated(mk.free_monoid(3), 3)


def test_scale_and_sharpness_errors():
    with pytest.raises(ValueError):
        mk.ToricMonoid(1, ((1,), (-1,)))
    big = mk.ToricMonoid(4, tuple(tuple(int(i == j) for j in range(4)) for i in range(4)))
    with pytest.raises(mk.ScaleError):
        mk.faces(big)
    with pytest.raises(mk.ScaleError):
        mk.is_saturated(big)


def test_inertia_action_examples():
    f = mk.AffineMapOnInertia(4, (2, -1))
    assert mk.inertia_action((0, 0), f) == f
    assert mk.inertia_action((3, 5), mk.chi((1, 0))).constant == 3
    const = mk.AffineMapOnInertia(7, (0, 0))
    assert mk.inertia_action((3, 5), const) == const


@given(vec2, vec2, st.integers(-5, 5), vec2)
def test_inertia_action_is_group_action(g, d, c, p):
    f = mk.AffineMapOnInertia(c, p)
    both = mk.inertia_action(tuple(a + b for a, b in zip(g, d)), f)
    assert both == mk.inertia_action(g, mk.inertia_action(d, f))


@given(vec2, st.integers(-5, 5), vec2, st.integers(-5, 5), vec2)
def test_pairing_equivariant(g, c, p, aug, v):
    f = mk.AffineMapOnInertia(c, p)
    x = mk.GroupAlgebraModJ2(aug, v)
    assert mk.pairing(mk.inertia_action(g, f), x) == mk.pairing(f, x.act(g))


def test_constants_pair_trivially_with_j():
    assert mk.pairing(mk.AffineMapOnInertia(9, (0, 0)), mk.GroupAlgebraModJ2(0, (3, -4))) == 0


def test_group_ring_reduction():
    x = mk.GroupAlgebraModJ2.from_group_ring({(2, 0): 1, (0, 0): -1})
    assert x == mk.GroupAlgebraModJ2(0, (2, 0))
    assert mk.GroupAlgebraModJ2.from_group_element((1, 2)) == mk.GroupAlgebraModJ2(1, (1, 2))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_lp_duality(r):
    res = mk.lp_duality_check(r, trials=20, seed=r)
    assert res["boundary"] == IntMatrix.identity(r)
    assert all(v for k, v in res.items() if k != "boundary")
