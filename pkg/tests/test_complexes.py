import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logdegen.complexes import (
    Complex,
    ComplexMap,
    ComplexWithAutomorphism,
    ShortExactSequence,
    cocone,
    cocone_long_exact_check,
    cone,
    herbrand_complex,
    herbrand_sequences,
    homology,
    induced_map,
    shift,
    shift_map,
    snake_connecting,
    triangle_long_exact_check,
    truncate,
    truncation_triangle,
)
from logdegen.randgen import rand_complex, rand_complex_pair_map, rand_unipotent_automorphism
from logdegen.zlin import AbelianGroupInvariants as Inv
from logdegen.zlin import IntMatrix

from oracles import homology_oracle

M = IntMatrix.from_rows
seeds = st.integers(0, 10 ** 9)


def two_term(k: int) -> Complex:
    return Complex(0, [1, 1], [M([[k]])])


def inv(K, n):
    return homology(K, n).invariants


def as_pair(i: Inv):
    return i.free_rank, list(i.torsion)


def test_d_squared_rejected():
    with pytest.raises(ValueError):
        Complex(0, [1, 1, 1], [M([[1]]), M([[1]])])


def test_chain_map_rejected():
    K = two_term(2)
    with pytest.raises(ValueError):
        ComplexMap(K, K, {0: M([[1]]), 1: M([[0]])})


def test_shift_examples():
    K = two_term(2)
    assert shift(K, 0) == K
    S = shift(K, 1)
    assert S.lo == -1 and S.diff(-1) == M([[-2]])


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(-3, 3))
def test_shift_homology(seed, k):
    K = rand_complex(random.Random(seed))
    for n in range(K.lo - k - 1, K.hi - k + 2):
        assert inv(shift(K, k), n) == inv(K, n + k)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(-3, 3), st.integers(-3, 3))
def test_shift_composition(seed, j, k):
    rng = random.Random(seed)
    K = rand_complex(rng)
    u = rand_complex_pair_map(rng)
    assert shift(shift(K, j), k) == shift(K, j + k)
    assert shift_map(shift_map(u, j), k) == shift_map(u, j + k)


def test_cone_examples():
    one = Complex.concentrated(0, 1)
    C, _, _ = cone(one.identity())
    assert all(inv(C, n).is_zero for n in range(-2, 2))
    C, _, _ = cone(ComplexMap(one, one, {0: M([[2]])}))
    assert inv(C, 0) == Inv(0, (2,)) and inv(C, -1).is_zero
    # u = 0: ranks add
    K = two_term(3)
    C, _, _ = cone(ComplexMap(K, K, {}))
    for n in range(-2, 3):
        assert inv(C, n).free_rank == inv(K, n).free_rank + inv(K, n + 1).free_rank


def test_cocone_examples():
    one = Complex.concentrated(0, 1)
    assert all(inv(cocone(one.identity()), n).is_zero for n in range(-1, 3))
    C = cocone(ComplexMap(one, one, {0: M([[3]])}))
    assert inv(C, 1) == Inv(0, (3,)) and inv(C, 0).is_zero


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_cone_cocone_homology_against_oracle(seed):
    u = rand_complex_pair_map(random.Random(seed))
    for C in (cone(u)[0], cocone(u)):
        for n in range(C.lo - 1, C.hi + 2):
            assert as_pair(inv(C, n)) == homology_oracle(C, n)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cone_and_cocone_les(seed):
    u = rand_complex_pair_map(random.Random(seed))
    assert triangle_long_exact_check(u).ok
    assert cocone_long_exact_check(u).ok


def test_i_after_u_vanishes_on_homology():
    rng = random.Random(7)
    for _ in range(30):
        u = rand_complex_pair_map(rng)
        _, i, _ = cone(u)
        for n in range(u.source.lo, u.source.hi + 1):
            assert induced_map(i @ u, n).is_zero()


def test_truncation_examples():
    K = two_term(2)
    assert all(inv(truncate(K, "<=0"), n).is_zero for n in range(-1, 3))
    T = truncate(K, ">=1")
    assert 0 in T.resolution_degrees
    assert inv(T, 1) == Inv(0, (2,)) and inv(T, 0).is_zero
    assert truncate(K, f"<={K.hi}") == K
    with pytest.raises(ValueError):
        truncate(K, (1, 1))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(-3, 4))
def test_point_truncation(seed, q):
    K = rand_complex(random.Random(seed))
    T = truncate(K, (q, q + 1))
    for n in range(min(T.lo, q) - 1, max(T.hi, q) + 2):
        assert inv(T, n) == (inv(K, q) if n == q else Inv(0, ()))


def test_truncation_triangle_example():
    tt = truncation_triangle(two_term(2), 0, 1, 2)
    assert tt["report"].ok
    assert all(inv(tt["sub"], n).is_zero for n in range(-1, 3))
    with pytest.raises(ValueError):
        truncation_triangle(two_term(2), 1, 1, 2)


def test_truncation_triangle_single_degree():
    K = Complex.concentrated(1, 2)
    tt = truncation_triangle(K, 0, 2, 3)
    assert tt["quotient"].is_zero()
    assert all(m.is_zero() for m in tt["connecting"].values())


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_truncation_triangle_random(seed):
    rng = random.Random(seed)
    K = rand_complex(rng)
    a = rng.randint(K.lo - 1, K.hi)
    b = rng.randint(a + 1, K.hi + 2)
    c = rng.randint(b + 1, K.hi + 3)
    assert truncation_triangle(K, a, b, c)["report"].ok


def test_snake_explicit_chase():
    A = Complex.concentrated(1, 1)
    B = Complex(0, [1, 1], [M([[1]])])
    C = Complex.concentrated(0, 1)
    u = ComplexMap(A, B, {1: M([[1]])})
    pi = ComplexMap(B, C, {0: M([[1]])})
    assert snake_connecting(u, pi, 0) == M([[1]])
    assert snake_connecting(-u, pi, 0) == M([[-1]])


def test_snake_split_zero_differential():
    A, C = Complex.concentrated(0, 2), Complex.concentrated(0, 1)
    B = Complex.concentrated(0, 3)
    u = ComplexMap(A, B, {0: M([[1, 0], [0, 1], [0, 0]])})
    pi = ComplexMap(B, C, {0: M([[0, 0, 1]])})
    assert snake_connecting(u, pi, 0).is_zero()


def test_snake_rejects_non_exact():
    A = Complex.concentrated(0, 1)
    with pytest.raises(ValueError):
        ShortExactSequence(ComplexMap(A, A, {0: M([[2]])}), ComplexMap(A, Complex.concentrated(0, 0), {}))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_xi_negation_and_cone_connecting(seed):
    u = rand_complex_pair_map(random.Random(seed))
    _, i, p = cone(u)
    for q in range(i.target.lo - 1, i.target.hi + 1):
        d = snake_connecting(i, p, q)
        assert snake_connecting(-i, p, q) == -d
        assert d == induced_map(u, q + 1)


def test_herbrand_examples():
    K = Complex.concentrated(0, 1)
    C = herbrand_complex(ComplexWithAutomorphism(K, ComplexMap(K, K, {0: M([[-1]])})))
    assert inv(C, 0).is_zero and inv(C, 1) == Inv(0, (2,))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_herbrand_trivial_action(seed):
    K = rand_complex(random.Random(seed))
    C = herbrand_complex(ComplexWithAutomorphism(K, K.identity()))
    for q in range(C.lo - 1, C.hi + 2):
        a, b = inv(K, q), inv(K, q - 1)
        assert inv(C, q).free_rank == a.free_rank + b.free_rank
        assert inv(C, q).torsion_order == a.torsion_order * b.torsion_order


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_herbrand_sequences(seed):
    W = rand_unipotent_automorphism(random.Random(seed))
    assert all(r.ok for r in herbrand_sequences(W).values())


def test_automorphism_must_be_invertible():
    K = Complex.concentrated(0, 1)
    with pytest.raises(ValueError):
        ComplexWithAutomorphism(K, ComplexMap(K, K, {0: M([[2]])}))
