import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logdegen import multilinear as ml
from logdegen.complexes import homology
from logdegen.randgen import rand_matrix, rand_unimodular
from logdegen.zlin import IntMatrix, det

from oracles import homology_oracle

M = IntMatrix.from_rows
I = IntMatrix.identity
seeds = st.integers(0, 10 ** 9)


def rand_ses(rng, max_rank=4):
    a = rng.randint(0, max_rank)
    c = rng.randint(0, max_rank - a)
    return ml.SplitExactSequence.standard(a, c, rand_unimodular(rng, a + c))


# --- bases and ranks ---

def test_power_ranks():
    for n in range(5):
        for q in range(5):
            assert ml.power_rank("wedge", n, q) == math.comb(n, q)
            assert ml.power_rank("sym", n, q) == (math.comb(n + q - 1, q) if n else int(q == 0))
            assert ml.power_rank("divided", n, q) == ml.power_rank("sym", n, q)


def test_wedge_basis_is_lex():
    assert ml.PowerBasis("wedge", 3, 2).indices == ((0, 1), (0, 2), (1, 2))


# --- eta and mu ---

def test_eta_wedge_q1_identity():
    assert ml.comult_eta("wedge", 3, 1) == I(3)


def test_eta_wedge_rank2():
    # e1^e2 -> e1 (x) e2 - e2 (x) e1, Kronecker order e1e1, e1e2, e2e1, e2e2
    assert ml.comult_eta("wedge", 2, 2) == M([[0], [1], [-1], [0]])


def test_eta_divided_rank1():
    assert ml.comult_eta("divided", 1, 3) == M([[1]])
    assert ml.comult_eta("sym", 1, 3) == M([[3]])


def test_eta_rejects_q0():
    with pytest.raises(ValueError):
        ml.comult_eta("wedge", 2, 0)


def test_mu_examples():
    assert ml.mult_mu("wedge", 2, 1, 1) == M([[0, 1, -1, 0]])
    for i, j in itertools.product(range(4), repeat=2):
        assert ml.mult_mu("sym", 1, i, j) == M([[1]])
        assert ml.mult_mu("divided", 1, i, j) == M([[math.comb(i + j, i)]])


def test_mu_eta_is_q_exhaustive():
    for kind in ml.KINDS:
        for n in range(5):
            for q in range(1, 5):
                r = ml.power_rank(kind, n, q)
                assert ml.mult_mu(kind, n, 1, q - 1) @ ml.comult_eta(kind, n, q) == q * I(r)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(ml.KINDS), st.integers(0, 3))
def test_functoriality(seed, kind, q):
    rng = random.Random(seed)
    n, m, k = (rng.randint(0, 3) for _ in range(3))
    f, g = rand_matrix(rng, m, n, 3), rand_matrix(rng, k, m, 3)
    assert ml.power_functor(kind, g @ f, q) == ml.power_functor(kind, g, q) @ ml.power_functor(kind, f, q)


def test_wedge_top_power_is_det():
    rng = random.Random(3)
    for n in range(1, 4):
        f = rand_matrix(rng, n, n, 4)
        assert ml.power_functor("wedge", f, n) == M([[det(f)]])


# --- derivations ---

def test_derivation_zero_and_identity():
    assert all(ml.derivation_identity_check(IntMatrix(2, 2), i, j, k)
               for i, j, k in itertools.product(range(3), range(3), ml.KINDS))
    assert ml.derivation_identity_check(I(2), 1, 1)
    a, b = ml.derivation_paths(I(2), 1, 1)
    assert a == b and not a.is_zero()


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_derivation_random(seed):
    rng = random.Random(seed)
    n, f = rng.randint(1, 3), rng.randint(1, 3)
    alpha = rand_matrix(rng, f, n, 3)
    i = rng.randint(0, 4)
    j = rng.randint(0, 4 - i)
    for kind in ml.KINDS:
        assert ml.derivation_identity_check(alpha, i, j, kind)
    assert ml.recursion_check(alpha, rng.randint(1, 4))


# --- Koszul complexes ---

def test_koszul_small_cases():
    u = M([[1], [2]])
    K0 = ml.koszul_complex(u, 0).complex
    assert K0.ranks == {0: 1}
    K1 = ml.koszul_complex(u, 1).complex
    assert K1.ranks == {0: 1, 1: 2} and K1.diff(0) == u


def test_koszul_identity_is_acyclic():
    K = ml.koszul_complex(I(2), 2).complex
    assert K.ranks == {0: 3, 1: 4, 2: 1}
    assert all(homology(K, n).invariants.is_zero for n in range(-1, 4))


def test_koszul_d_squared_200():
    rng = random.Random(200)
    for _ in range(200):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        # construction raises if d o d != 0
        K = ml.koszul_complex(rand_matrix(rng, b, a, 3), rng.randint(0, 3)).complex
        for p in K.degrees:
            q = K.hi
            assert K.rank(p) == ml.power_rank("divided", a, q - p) * ml.power_rank("wedge", b, p)


def test_koszul_quasi_iso_example():
    ses = ml.SplitExactSequence.standard(1, 2)
    rep = ml.koszul_quasi_iso_check(ses, 2)
    assert rep.ok and rep.homology[0].free_rank == 1
    assert ml.koszul_quasi_iso_check(ses, 0).ok


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 3))
def test_koszul_quasi_iso_random(seed, q):
    ses = rand_ses(random.Random(seed))
    assert ml.koszul_quasi_iso_check(ses, q).ok
    K = ml.edge_map(ses, q).source
    for n in range(K.lo - 1, K.hi + 2):
        expected = (ml.power_rank("wedge", ses.c, q), []) if n == 0 else (0, [])
        assert homology_oracle(K, n) == expected


def test_split_sequence_validation():
    with pytest.raises(ValueError):
        ml.SplitExactSequence(M([[2]]), IntMatrix(0, 1))


# --- filtration and the u_q sequence ---

def test_filtration_examples():
    ses = ml.SplitExactSequence.standard(1, 1)
    assert ml.koszul_filtration(ses.u, 2, 0) == I(1)
    assert ml.koszul_filtration(ses.u, 2, 3).cols == 0
    assert ml.koszul_filtration(ses.u, 2, 1).cols == 1
    assert ml.filtration_graded_ranks(ses, 2) == [(0, 0, True), (1, 1, True), (0, 0, True)]


def test_filtration_rejects_unsaturated():
    with pytest.raises(ValueError):
        ml.koszul_filtration(M([[2], [0]]), 1, 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_filtration_random(seed):
    rng = random.Random(seed)
    ses = rand_ses(rng)
    q = rng.randint(0, 3)
    assert all(r == e and free for r, e, free in ml.filtration_graded_ranks(ses, q))
    q1, q2 = rng.randint(0, 2), rng.randint(0, 2)
    i, j = rng.randint(0, q1), rng.randint(0, q2)
    assert ml.filtration_is_multiplicative(ses.u, q1, q2, i, j)


def test_xi_sequence_q1_is_original():
    rng = random.Random(11)
    ses = rand_ses(rng)
    seq = ml.xi_q_sequence(ses, 1)
    assert seq.u_q == ses.u and seq.pi_q == ses.pi


def test_xi_sequence_small():
    ses = ml.SplitExactSequence.standard(1, 1)
    seq = ml.xi_q_sequence(ses, 2)
    assert seq.quotient.rows == 1 and seq.u_q.shape == (1, 1) and seq.pi_q.rows == 0
    assert seq.exact


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 3))
def test_xi_sequence_random(seed, q):
    rng = random.Random(seed)
    ses = rand_ses(rng)
    seq = ml.xi_q_sequence(ses, q)
    assert seq.exact and ml.xi_ladder_commutes(seq)
    res = ml.xi_connecting_check(seq, rand_matrix(rng, ses.a, ses.c, 3))
    assert res["ok"] and res["rho_q_unipotent"]


def test_xi_connecting_detects_a_nonzero_map():
    ses = ml.SplitExactSequence.standard(1, 1)
    res = ml.xi_connecting_check(ml.xi_q_sequence(ses, 1), M([[5]]))
    assert res["u_q"] == M([[-5]]) and res["ok"]


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3))
def test_comparison_maps(seed, q):
    ses = rand_ses(random.Random(seed), 3)
    assert all(ml.comparison_check(ses, q).values())


# --- truncated symmetric algebra ---

def test_interior_mult_examples():
    S = ml.TruncatedSymAlgebra(1, 4)
    lam = ml.interior_mult([1], S)
    for k in range(1, 5):
        col = [lam[i][k] for i in range(S.dim)]
        assert col == [Fraction(k) if i == k - 1 else 0 for i in range(S.dim)]
    assert all(lam[i][0] == 0 for i in range(S.dim))


def test_translation_example():
    S = ml.TruncatedSymAlgebra(1, 2)
    rho = ml.translation_automorphism([1], S)
    assert [rho[i][2] for i in range(3)] == [1, 2, 1]
    assert ml.q_exp_nilpotent(ml.interior_mult([1], S)) == rho


def test_exp_log_zero_gamma():
    S = ml.TruncatedSymAlgebra(2, 3)
    res = ml.unipotent_exp_log_check([0, 0], S)
    assert res["ok"]
    assert ml.translation_automorphism([0, 0], S) == ml._qeye(S.dim)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_exp_log_random(seed):
    rng = random.Random(seed)
    r, n = rng.randint(1, 3), rng.randint(0, 4)
    gamma = [rng.randint(-3, 3) for _ in range(r)]
    assert ml.unipotent_exp_log_check(gamma, ml.TruncatedSymAlgebra(r, n))["ok"]


def test_derivation_100_monomial_pairs():
    rng = random.Random(100)
    for _ in range(100):
        r, n = rng.randint(1, 3), rng.randint(0, 4)
        S = ml.TruncatedSymAlgebra(r, n)
        a = rng.choice(S.monomials)
        b = rng.choice([m for m in S.monomials if sum(m) + sum(a) <= n])
        assert ml.derivation_check([rng.randint(-3, 3) for _ in range(r)], S, a, b)


def test_truncated_product_flags_drop():
    S = ml.TruncatedSymAlgebra(1, 2)
    prod, dropped = S.multiply({(2,): 1}, {(1,): 1})
    assert prod == {} and dropped
