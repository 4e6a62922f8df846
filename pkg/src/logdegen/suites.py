"""Seeded randomized invariant suites behind ``logdegen verify``.

Each suite is a list of named properties; a property takes a ``random.Random``
and returns ``True`` when the invariant holds on the instance it draws.  An
exception counts as a failure and its message is kept for the summary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import complexes as cx
from . import degeneration as dg
from . import monoidkit as mk
from . import multilinear as ml
from .randgen import (
    rand_complex,
    rand_complex_pair_map,
    rand_curve,
    rand_graph,
    rand_matrix,
    rand_unimodular,
    rand_unipotent_automorphism,
)
from .zlin import (
    IntMatrix,
    cokernel_invariants,
    det,
    is_unimodular,
    kernel_basis,
    rank,
    smith_normal_form,
    solve,
)

Property = Callable[[random.Random], bool]


def fraction_rank(A: IntMatrix) -> int:
    """Rank over Q by plain Gaussian elimination on fractions."""
    rows = [[Fraction(x) for x in A.row(i)] for i in range(A.rows)]
    r = 0
    for c in range(A.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# --- zlin ---------------------------------------------------------------------------------

def _rand_dims(rng):
    return rng.randint(0, 6), rng.randint(0, 6)


def p_snf_identity(rng):
    m, n = _rand_dims(rng)
    A = rand_matrix(rng, m, n)
    s = smith_normal_form(A)
    d = s.diagonal
    nz = [x for x in d if x]
    return (s.U @ A @ s.V == s.D and is_unimodular(s.U) and is_unimodular(s.V)
            and all(x >= 0 for x in d) and d[:len(nz)] == tuple(nz)
            and all(b % a == 0 for a, b in zip(nz, nz[1:])))


def p_snf_rank(rng):
    A = rand_matrix(rng, *_rand_dims(rng))
    return rank(A) == fraction_rank(A) == smith_normal_form(A).rank


def p_kernel_saturated(rng):
    m, n = _rand_dims(rng)
    A = rand_matrix(rng, m, n, 4)
    if rng.random() < 0.5 and m:
        A = A.vstack(2 * A.select_rows([0]))
    K = kernel_basis(A)
    return ((A @ K).is_zero() and K.cols == A.cols - rank(A)
            and cokernel_invariants(K).is_free)


def p_solve(rng):
    m, n = _rand_dims(rng)
    A = rand_matrix(rng, m, n)
    X0 = rand_matrix(rng, n, 2)
    X = solve(A, A @ X0)
    return X is not None and A @ X == A @ X0


def p_det_multiplicative(rng):
    n = rng.randint(0, 5)
    A, B = rand_matrix(rng, n, n, 5), rand_matrix(rng, n, n, 5)
    return det(A @ B) == det(A) * det(B)


ZLIN = {
    "snf U*A*V == D, unimodular, divisibility": p_snf_identity,
    "snf rank == rational rank": p_snf_rank,
    "kernel basis saturated": p_kernel_saturated,
    "solve round trip": p_solve,
    "det multiplicative": p_det_multiplicative,
}


# --- complexes -------------------------------------------------------------------------------

def p_cone_les(rng):
    return cx.triangle_long_exact_check(rand_complex_pair_map(rng)).ok


def p_cocone_les(rng):
    return cx.cocone_long_exact_check(rand_complex_pair_map(rng)).ok


def p_truncation_triangle(rng):
    K = rand_complex(rng)
    a = rng.randint(K.lo - 1, K.hi)
    b = rng.randint(a + 1, K.hi + 2)
    c = rng.randint(b + 1, K.hi + 3)
    return cx.truncation_triangle(K, a, b, c)["report"].ok


def p_truncation_point(rng):
    K = rand_complex(rng)
    q = rng.randint(K.lo - 1, K.hi + 1)
    T = cx.truncate(K, (q, q + 1))
    return all(
        (cx.homology(T, n).invariants == cx.homology(K, q).invariants) if n == q
        else cx.homology(T, n).invariants.is_zero
        for n in range(T.lo - 1, T.hi + 2))


def p_shift_composition(rng):
    K = rand_complex(rng)
    j, k = rng.randint(-3, 3), rng.randint(-3, 3)
    u = rand_complex_pair_map(rng)
    return (cx.shift(cx.shift(K, j), k) == cx.shift(K, j + k)
            and cx.shift(K, 0) == K
            and cx.shift_map(cx.shift_map(u, j), k) == cx.shift_map(u, j + k)
            and all(cx.homology(cx.shift(K, k), n).invariants == cx.homology(K, n + k).invariants
                    for n in range(K.lo - k - 1, K.hi - k + 2)))


def p_cone_shift(rng):
    """``diag(1, (-1)^k)`` is an isomorphism ``cone(u[k]) -> cone(u)[k]``."""
    u = rand_complex_pair_map(rng)
    k = rng.randint(-2, 2)
    C1, _, _ = cx.cone(cx.shift_map(u, k))
    C2 = cx.shift(cx.cone(u)[0], k)
    A, B = u.source, u.target
    sign = -1 if k % 2 else 1
    comps = {}
    for n in range(min(C1.lo, C2.lo), max(C1.hi, C2.hi) + 1):
        comps[n] = IntMatrix.identity(B.rank(n + k)).block_diag(sign * IntMatrix.identity(A.rank(n + k + 1)))
    f = cx.ComplexMap(C1, C2, comps)
    return all(abs(det(f[n])) == 1 for n in range(C1.lo, C1.hi + 1))


def p_xi_negation(rng):
    """Negating the injection of ``0 -> B -> C(u) -> A[1] -> 0`` negates the connecting map."""
    u = rand_complex_pair_map(rng)
    _, i, p = cx.cone(u)
    ok = True
    for q in range(i.target.lo - 1, i.target.hi + 1):
        d = cx.snake_connecting(i, p, q)
        ok = ok and cx.snake_connecting(-i, p, q) == -d
        # for the cone sequence the chase recovers H(u) itself
        ok = ok and d == cx.induced_map(u, q + 1)
    return ok


def p_herbrand(rng):
    return all(r.ok for r in cx.herbrand_sequences(rand_unipotent_automorphism(rng)).values())


COMPLEXES = {
    "cone long exact sequence": p_cone_les,
    "cocone long exact sequence": p_cocone_les,
    "truncation triangle exact": p_truncation_triangle,
    "tau[q,q] is H^q in degree q": p_truncation_point,
    "shift composition laws": p_shift_composition,
    "cone of shift vs shift of cone": p_cone_shift,
    "xi(-u) == -xi(u)": p_xi_negation,
    "Herbrand short exact sequences": p_herbrand,
}


# --- Koszul / multilinear -----------------------------------------------------------------------

def _rand_ses(rng, max_rank=4):
    a = rng.randint(0, max_rank)
    c = rng.randint(0, max_rank - a)
    return ml.SplitExactSequence.standard(a, c, rand_unimodular(rng, a + c))


def p_mu_eta(rng):
    kind = rng.choice(ml.KINDS)
    n, q = rng.randint(0, 4), rng.randint(1, 4)
    return ml.mult_mu(kind, n, 1, q - 1) @ ml.comult_eta(kind, n, q) == q * IntMatrix.identity(ml.power_rank(kind, n, q))


def p_derivation(rng):
    n, f = rng.randint(1, 3), rng.randint(1, 3)
    alpha = rand_matrix(rng, f, n, 3)
    i = rng.randint(0, 3)
    j = rng.randint(0, 4 - i)
    return all(ml.derivation_identity_check(alpha, i, j, kind) for kind in ml.KINDS)


def p_koszul_qis(rng):
    ses = _rand_ses(rng)
    return ml.koszul_quasi_iso_check(ses, rng.randint(0, 3)).ok


def p_filtration(rng):
    ses = _rand_ses(rng)
    return all(r == e and free for r, e, free in ml.filtration_graded_ranks(ses, rng.randint(0, 3)))


def p_xi_sequence(rng):
    ses = _rand_ses(rng)
    seq = ml.xi_q_sequence(ses, rng.randint(1, 3))
    phi = rand_matrix(rng, ses.a, ses.c, 3)
    return seq.exact and ml.xi_ladder_commutes(seq) and ml.xi_connecting_check(seq, phi)["ok"]


def p_comparison(rng):
    ses = _rand_ses(rng, 3)
    return all(ml.comparison_check(ses, rng.randint(1, 3)).values())


KOSZUL = {
    "mu o eta == q id": p_mu_eta,
    "derivation identity": p_derivation,
    "Kos^q(u)[q] quasi-isomorphic to wedge^q C": p_koszul_qis,
    "Koszul filtration graded pieces": p_filtration,
    "u_q sequence exact, connecting map": p_xi_sequence,
    "comparison maps": p_comparison,
}


# --- truncated symmetric algebra ------------------------------------------------------------------

def p_exp_log(rng):
    r, n = rng.randint(1, 3), rng.randint(0, 4)
    gamma = [rng.randint(-3, 3) for _ in range(r)]
    return ml.unipotent_exp_log_check(gamma, ml.TruncatedSymAlgebra(r, n))["ok"]


def p_interior_derivation(rng):
    r, n = rng.randint(1, 3), rng.randint(0, 4)
    S = ml.TruncatedSymAlgebra(r, n)
    gamma = [rng.randint(-3, 3) for _ in range(r)]
    a = rng.choice(S.monomials)
    rest = [m for m in S.monomials if sum(m) + sum(a) <= n]
    return ml.derivation_check(gamma, S, a, rng.choice(rest))


SYMALG = {
    "exp(lambda) == rho, log(rho) == lambda, annihilators": p_exp_log,
    "interior multiplication is a derivation": p_interior_derivation,
}


# --- monoids ---------------------------------------------------------------------------------------

def p_qn_membership(rng):
    Q = mk.qn(rng.randint(1, 5))
    M = Q.monoid()
    x = (rng.randint(-2, 12), rng.randint(-2, 12))
    return M.contains(x) == Q.contains(x)


def p_qn_decomposition(rng):
    Q = mk.qn(rng.randint(1, 5))
    k, m = rng.randint(0, 5), rng.randint(0, 5)
    x = tuple(k * a + m * b for a, b in zip(Q.q, rng.choice((Q.q1, Q.q2))))
    dec = mk.unique_decomposition(Q, x)
    return mk.recompose(Q, *dec) == x and mk.decompositions(Q, x) == [dec]


def p_qn_faces(rng):
    Q = mk.qn(rng.randint(1, 5))
    return [sorted(f) for f in mk.faces(Q.monoid())] == [[], [1], [2], [0, 1, 2]]


def p_lp_duality(rng):
    r = rng.randint(1, 3)
    res = mk.lp_duality_check(r, trials=5, seed=rng.randrange(10 ** 6))
    return all(v for k, v in res.items() if isinstance(v, bool))


MONOID = {
    "Q_n membership agrees with generator search": p_qn_membership,
    "Q_n unique decomposition": p_qn_decomposition,
    "Q_n face lattice": p_qn_faces,
    "L_P duality": p_lp_duality,
}


# --- graphs ------------------------------------------------------------------------------------------

def p_adjoint(rng):
    return dg.build_complexes(rand_graph(rng)).adjoint


def p_torsion_free(rng):
    gc = dg.build_complexes(rand_graph(rng))
    h = dg.graph_homology(gc)
    G_edges, G_vertices = gc.d1.cols, gc.d1.rows
    # Euler characteristic of the graph
    return (h.H0.free_rank - h.H1.free_rank == G_vertices - G_edges
            and h.H0 == h.h0 and h.H1 == h.h1)


def p_laplacian(rng):
    return dg.graph_laplacian_identities(rand_graph(rng))


def p_graph_flip(rng):
    G = rand_graph(rng)
    if not G.edges:
        return True
    F = G.flipped(rng.randrange(len(G.edges)))
    h, hf = dg.graph_homology(dg.build_complexes(G)), dg.graph_homology(dg.build_complexes(F))
    return (h.H0, h.H1, h.h0, h.h1) == (hf.H0, hf.H1, hf.h0, hf.h1)


GRAPH = {
    "d1 == transpose(d0)": p_adjoint,
    "homology torsion-free, Euler characteristic": p_torsion_free,
    "Laplacian identities": p_laplacian,
    "orientation flip invariance": p_graph_flip,
}


# --- degenerations -----------------------------------------------------------------------------------

def p_genus_oracle(rng):
    data = rand_curve(rng)
    return dg.betti_report(data).genus == dg.gluing_euler_oracle(data)


def p_betti(rng):
    b = dg.betti_report(rand_curve(rng))
    return b.h1_fiber == b.h1_graph + b.h1_X == 2 * b.genus


def p_spectral(rng):
    data = rand_curve(rng)
    ss = dg.spectral_sequence(data)
    b = dg.betti_report(data)
    gc = dg.build_complexes(data.graph)
    E = ss.Einf
    return (ss.d2 == -gc.d1 and E[(0, 1)] == b.h1_graph and E[(2, 0)] == 1
            and E[(1, 0)] + E[(0, 1)] == b.h1_fiber and E[(2, 0)] + E[(1, 1)] == 1)


def p_pairing(rng):
    Q = dg.monodromy_pairing(rand_curve(rng))
    return Q == Q.T and all(m > 0 for m in dg.leading_minors(Q))


def p_picard_lefschetz(rng):
    data = rand_curve(rng)
    k = rng.randint(-3, 3)
    m = dg.picard_lefschetz(data, k)
    beta = m.basis_blocks[0]
    n = m.rho.rows
    ok = (m.N @ m.N).is_zero() and m.rho == IntMatrix.identity(n) + m.N
    ok = ok and rank(m.N) == (beta if k else 0)
    # only the H_1 -> H^1 block may be nonzero
    hi = n - beta
    ok = ok and all(m.N[i, j] == 0 for i in range(n) for j in range(n) if not (i < beta and j >= hi))
    return ok


def p_curve_flip(rng):
    data = rand_curve(rng)
    if not data.graph.edges:
        return True
    flip = data.flipped(rng.randrange(len(data.graph.edges)))
    a, b = dg.picard_lefschetz(data), dg.picard_lefschetz(flip)
    return (det(a.pairing_gram) == det(b.pairing_gram) and rank(a.N) == rank(b.N)
            and rank(dg.spectral_sequence(data).d2) == rank(dg.spectral_sequence(flip).d2)
            and dg.betti_report(data) == dg.betti_report(flip))


def p_vertex_pairing(rng):
    data = rand_curve(rng, max_nu=1)
    P = dg.vertex_pairing(data)
    G = data.graph
    return all(P[v, w] == -G.shared_edges(v, w) for v in range(len(G.vertices))
               for w in range(len(G.vertices)) if v != w)


DEGENERATION = {
    "genus == Euler oracle genus": p_genus_oracle,
    "Betti bookkeeping": p_betti,
    "spectral sequence bookkeeping": p_spectral,
    "monodromy pairing positive definite": p_pairing,
    "Picard-Lefschetz shape": p_picard_lefschetz,
    "orientation flip invariance": p_curve_flip,
    "pairing of coboundaries, nu = 1": p_vertex_pairing,
}


SUITES: dict[str, dict[str, Property]] = {
    "zlin": ZLIN,
    "complexes": COMPLEXES,
    "koszul": KOSZUL,
    "symalg": SYMALG,
    "monoid": MONOID,
    "graph": GRAPH,
    "degeneration": DEGENERATION,
}


@dataclass
class PropertyResult:
    suite: str
    name: str
    passed: int = 0
    failed: int = 0
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def run_suite(name: str, trials: int, seed: int) -> list[PropertyResult]:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(name)
    results = []
    for s in names:
        for pi, (pname, prop) in enumerate(SUITES[s].items()):
            res = PropertyResult(s, pname)
            for t in range(trials):
                # independent stream per (suite, property, trial)
                rng = random.Random(f"{seed}:{s}:{pi}:{t}")
                try:
                    good = bool(prop(rng))
                except Exception as exc:  # noqa: BLE001 - reported, not swallowed
                    good = False
                    res.errors.append(f"trial {t}: {type(exc).__name__}: {exc}")
                if good:
                    res.passed += 1
                else:
                    res.failed += 1
            results.append(res)
    return results
