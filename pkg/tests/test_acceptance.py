"""Acceptance criteria 1 to 11, each at its stated sample size.

Every test records a one-line verdict through ``record_property``; the
``pytest_terminal_summary`` hook in ``conftest.py`` prints them after the run.
The file also runs standalone: ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from logdegen import degeneration as dg  # noqa: E402
from logdegen import multilinear as ml  # noqa: E402
from logdegen.complexes import (  # noqa: E402
    cocone_long_exact_check,
    cone,
    herbrand_sequences,
    shift,
    shift_map,
    snake_connecting,
    triangle_long_exact_check,
    truncation_triangle,
)
from logdegen.document import load  # noqa: E402
from logdegen.monoidkit import lp_duality_check  # noqa: E402
from logdegen.randgen import (  # noqa: E402
    rand_complex,
    rand_complex_pair_map,
    rand_curve,
    rand_matrix,
    rand_unimodular,
    rand_unipotent_automorphism,
)
from logdegen.zlin import IntMatrix, det, kernel_basis, rank  # noqa: E402

FIX = Path(__file__).parent / "fixtures"
CURVE_FIXTURES = ["nodal_cubic", "I2", "I3", "I4", "I5", "theta", "smooth_g2", "empty_curve",
                  "mixed_genus", "compact_type", "loops_on_elliptic", "banana_mixed"]


def fixture_curves():
    return [(name, load(FIX / f"{name}.json")) for name in CURVE_FIXTURES]


def random_curves(n=100, seed=2024):
    rng = random.Random(seed)
    return [(f"random#{i}", rand_curve(rng, max_components=6, max_nodes=10, max_genus=3, max_nu=4))
            for i in range(n)]


def curve_set():
    return fixture_curves() + random_curves()


def verdict(record_property, number, ok, detail):
    record_property("acceptance", f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


# --- 1 to 5: degenerations of curves ---

def criterion_1():
    bad = [name for name, data in curve_set()
           if dg.betti_report(data).genus != dg.gluing_euler_oracle(data)]
    return not bad, f"genus == Euler oracle on {len(CURVE_FIXTURES)} fixtures + 100 random; mismatches {bad}"


def criterion_2():
    bad = []
    for name, data in curve_set():
        b = dg.betti_report(data)
        if not b.h1_fiber == b.h1_graph + b.h1_X == 2 * b.genus:
            bad.append(name)
    return not bad, f"h1_fiber == h1_graph + h1_X == 2 genus; mismatches {bad}"


def criterion_3():
    bad = []
    for name, data in curve_set():
        ss = dg.spectral_sequence(data)
        d1 = dg.build_complexes(data.graph).d1
        h1 = dg.betti_report(data).h1_graph
        ker = kernel_basis(ss.d2).cols
        coker = ss.d2.rows - rank(ss.d2)
        if not (ss.d2 == -d1 and ker == h1 and coker == 1):
            bad.append(name)
    return not bad, f"rank ker d2 == h1(graph), rank coker d2 == 1, d2 == -d1; mismatches {bad}"


def criterion_4():
    bad = []
    for name, data in fixture_curves():
        Q = dg.monodromy_pairing(data)
        if not (Q == Q.T and all(m > 0 for m in dg.leading_minors(Q))):
            bad.append(name)
    for n in range(1, 7):
        cubic = dg.LogCurveData.build([("C", 0)], [("x", ("C", "C"), n)])
        if dg.monodromy_pairing(cubic) != IntMatrix.from_rows([[n]]):
            bad.append(f"nodal_cubic nu={n}")
    theta_det = det(dg.monodromy_pairing(load(FIX / "theta.json")))
    ok = not bad and theta_det == 3
    return ok, f"Gram symmetric positive definite, nodal cubic [n] for n=1..6, theta det {theta_det}; failures {bad}"


def _edge_counts(graph):
    counts = Counter()
    for a, b in graph.ends:
        if a != b:
            counts[(a, b)] += 1
            counts[(b, a)] += 1
    return counts


def criterion_5():
    bad = []
    for name, data in curve_set():
        m = dg.picard_lefschetz(data)
        if not ((m.N @ m.N).is_zero() and rank(m.N) == dg.betti_report(data).h1_graph):
            bad.append(name)
    for n in range(1, 7):
        cubic = dg.LogCurveData.build([("C", 0)], [("x", ("C", "C"), n)])
        rho = dg.picard_lefschetz(cubic).rho
        classical = IntMatrix.from_rows([[1, n], [0, 1]])
        if not dg.conjugating_check(rho, classical, IntMatrix.from_rows([[1, 0], [0, -1]])):
            bad.append(f"nodal_cubic nu={n} not conjugate")
    rng = random.Random(55)
    semistable = [d for _, d in fixture_curves() if all(v == 1 for v in d.nu)]
    semistable += [rand_curve(rng, max_nu=1) for _ in range(50)]
    for data in semistable:
        P = dg.vertex_pairing(data)
        e = _edge_counts(data.graph)
        nv = len(data.graph.vertices)
        if any(P[v, w] != -e[(v, w)] for v in range(nv) for w in range(nv) if v != w):
            bad.append("vertex pairing")
    return not bad, f"N^2 == 0, rank N == h1(graph), nodal cubic ~ [[1,n],[0,1]], off-diagonal == -e(v,w); failures {bad}"


# --- 6 to 9: multilinear algebra and monoids ---

def criterion_6():
    rng = random.Random(6)
    bad = 0
    for _ in range(100):
        a = rng.randint(0, 4)
        c = rng.randint(0, 4 - a)
        ses = ml.SplitExactSequence.standard(a, c, rand_unimodular(rng, a + c))
        if not ml.koszul_quasi_iso_check(ses, rng.randint(0, 3)).ok:
            bad += 1
    return bad == 0, f"Kos^q(u)[q] homology free of rank wedge^q C in degree 0 on 100 sequences; failures {bad}"


def criterion_7():
    bad = []
    for kind, n, q in itertools.product(ml.KINDS, range(5), range(1, 5)):
        r = ml.power_rank(kind, n, q)
        if ml.mult_mu(kind, n, 1, q - 1) @ ml.comult_eta(kind, n, q) != q * IntMatrix.identity(r):
            bad.append((kind, n, q))
    rng = random.Random(7)
    for _ in range(100):
        alpha = rand_matrix(rng, rng.randint(1, 3), rng.randint(1, 3), 3)
        i = rng.randint(0, 4)
        j = rng.randint(0, 4 - i)
        for kind in ml.KINDS:
            if not ml.derivation_identity_check(alpha, i, j, kind):
                bad.append(("derivation", kind, i, j))
    return not bad, f"mu o eta == q id for 3 kinds, rank <= 4, q <= 4; derivation identity on 100 alpha; failures {bad}"


def criterion_8():
    rng = random.Random(8)
    bad = 0
    for _ in range(50):
        r, n = rng.randint(1, 3), rng.randint(0, 4)
        gamma = [rng.randint(-4, 4) for _ in range(r)]
        if not ml.unipotent_exp_log_check(gamma, ml.TruncatedSymAlgebra(r, n))["ok"]:
            bad += 1
    return bad == 0, f"rho == exp(lam), log(rho) == lam, N_n == Ann(J^(n+1)) on 50 gamma; failures {bad}"


def criterion_9():
    bad = []
    for r in (1, 2, 3):
        res = lp_duality_check(r, trials=20, seed=r)
        if res["boundary"] != IntMatrix.identity(r) or not all(v for k, v in res.items() if k != "boundary"):
            bad.append(r)
    return not bad, f"L_P pairing iso, equivariance, boundary == id for r = 1..3; failures {bad}"


# --- 10 and 11: complexes ---

def criterion_10():
    counts = Counter()
    rng = random.Random(10)
    for _ in range(200):
        u = rand_complex_pair_map(rng)
        counts["cone/cocone LES"] += not (triangle_long_exact_check(u).ok and cocone_long_exact_check(u).ok)
    for _ in range(200):
        K = rand_complex(rng)
        a = rng.randint(K.lo - 1, K.hi)
        b = rng.randint(a + 1, K.hi + 2)
        c = rng.randint(b + 1, K.hi + 3)
        counts["truncation triangle"] += not truncation_triangle(K, a, b, c)["report"].ok
    for _ in range(200):
        u = rand_complex_pair_map(rng)
        _, i, p = cone(u)
        for q in range(i.target.lo - 1, i.target.hi + 1):
            if snake_connecting(-i, p, q) != -snake_connecting(i, p, q):
                counts["xi negation"] += 1
                break
    for _ in range(200):
        K = rand_complex(rng)
        u = rand_complex_pair_map(rng)
        j, k = rng.randint(-3, 3), rng.randint(-3, 3)
        ok = shift(shift(K, j), k) == shift(K, j + k) and shift_map(shift_map(u, j), k) == shift_map(u, j + k)
        ok = ok and shift(K, 0) == K
        counts["shift laws"] += not ok
    failures = {k: v for k, v in counts.items() if v}
    return not failures, f"LES, truncation triangle, xi_(-u) == -xi_u, shift laws, 200 each; failures {failures}"


def criterion_11():
    rng = random.Random(11)
    bad = 0
    for _ in range(100):
        W = rand_unipotent_automorphism(rng)
        lam = W.rho - W.base.identity()
        long_ok = cocone_long_exact_check(lam).ok
        short_ok = all(r.ok for r in herbrand_sequences(W).values())
        bad += not (long_ok and short_ok)
    return bad == 0, f"long and short Herbrand sequences exact on 100 (K, rho); failures {bad}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("number", range(1, 12))
def test_criterion(record_property, number):
    ok, detail = CRITERIA[number - 1]()
    assert verdict(record_property, number, ok, detail), detail


if __name__ == "__main__":
    results = []
    for number, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    raise SystemExit(0 if all(results) else 1)
