"""Seeded random instances for property checks and the ``verify`` suites."""

from __future__ import annotations

import random

from .complexes import Complex, ComplexMap, ComplexWithAutomorphism
from .degeneration import DualGraph, LogCurveData
from .zlin import IntMatrix, kernel_basis


def rand_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> IntMatrix:
    return IntMatrix(rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


def rand_unimodular(rng: random.Random, n: int, steps: int | None = None) -> IntMatrix:
    """Product of random elementary matrices and sign flips."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
    for i in range(n):
        if rng.random() < 0.3:
            rows[i] = [-a for a in rows[i]]
    return IntMatrix.from_rows(rows, n)


def _annihilated(rng: random.Random, prev: IntMatrix, rows: int, bound: int) -> IntMatrix:
    """Random matrix ``M`` with ``M @ prev == 0`` (``prev`` has ``cols(M)`` rows)."""
    W = kernel_basis(prev.T)  # columns w with w^T prev = 0
    if W.cols == 0:
        return IntMatrix(rows, prev.rows)
    R = rand_matrix(rng, rows, W.cols, bound)
    # occasionally scale to create torsion in homology
    if rng.random() < 0.4:
        R = rng.choice((2, 3)) * R
    return R @ W.T


def rand_complex(rng: random.Random, max_rank: int = 4, width: int = 4, lo: int | None = None,
                 bound: int = 3) -> Complex:
    """Random complex with support width ``<= width`` and ranks ``<= max_rank``."""
    if lo is None:
        lo = rng.randint(-2, 1)
    n = rng.randint(1, width)
    ranks = [rng.randint(0, max_rank) for _ in range(n)]
    diffs = []
    for i in range(n - 1):
        if i == 0:
            d = rand_matrix(rng, ranks[1], ranks[0], bound)
        else:
            d = _annihilated(rng, diffs[-1], ranks[i + 1], bound)
        if rng.random() < 0.15:
            d = IntMatrix(ranks[i + 1], ranks[i])
        diffs.append(d)
    return Complex(lo, ranks, diffs)


def rand_chain_map(rng: random.Random, A: Complex, B: Complex, bound: int = 2) -> ComplexMap:
    """Random chain map: a null-homotopic ``d h + h d`` plus, for endomorphisms, a scalar."""
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    h = {n: rand_matrix(rng, B.rank(n - 1), A.rank(n), bound) for n in range(lo, hi + 2)}
    comps = {}
    for n in range(lo, hi + 1):
        comps[n] = B.diff(n - 1) @ h[n] + h[n + 1] @ A.diff(n)
    f = ComplexMap(A, B, comps)
    if A == B and rng.random() < 0.7:
        k = rng.randint(-3, 3)
        f = f + k * A.identity()
    return f


def rand_complex_pair_map(rng: random.Random, max_rank: int = 3, width: int = 3) -> ComplexMap:
    """Random ``u: A -> B`` mixing null-homotopic, scalar and direct-sum pieces."""
    A = rand_complex(rng, max_rank, width)
    if rng.random() < 0.5:
        B = A
    else:
        extra = rand_complex(rng, max_rank, width, lo=A.lo)
        B = direct_sum(A, extra)
        f = rand_chain_map(rng, A, A)
        lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
        comps = {n: f[n].vstack(IntMatrix(extra.rank(n), A.rank(n))) for n in range(lo, hi + 1)}
        g = ComplexMap(A, B, comps)
        return g + rand_chain_map(rng, A, B)
    return rand_chain_map(rng, A, B)


def direct_sum(A: Complex, B: Complex) -> Complex:
    lo, hi = min(A.lo, B.lo), max(A.hi, B.hi)
    ranks = [A.rank(n) + B.rank(n) for n in range(lo, hi + 1)]
    diffs = [A.diff(n).block_diag(B.diff(n)) for n in range(lo, hi)]
    return Complex(lo, ranks, diffs)


def rand_unipotent_automorphism(rng: random.Random, max_rank: int = 3, width: int = 3) -> ComplexWithAutomorphism:
    """``K = A + B`` with ``rho = [[1, g], [0, 1]]`` for a random chain map ``g: B -> A``."""
    A = rand_complex(rng, max_rank, width)
    B = A if rng.random() < 0.6 else rand_complex(rng, max_rank, width, lo=A.lo)
    g = rand_chain_map(rng, B, A)
    K = direct_sum(A, B)
    comps = {}
    for n in range(K.lo, K.hi + 1):
        top = IntMatrix.identity(A.rank(n)).hstack(g[n])
        bot = IntMatrix(B.rank(n), A.rank(n)).hstack(IntMatrix.identity(B.rank(n)))
        comps[n] = top.vstack(bot)
    return ComplexWithAutomorphism(K, ComplexMap(K, K, comps))


def rand_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 10) -> DualGraph:
    """Random multigraph with loops, possibly disconnected."""
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edges)
    ends = tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(ne))
    return DualGraph(tuple(f"C{i}" for i in range(nv)), tuple(f"x{e}" for e in range(ne)), ends)


def rand_curve(rng: random.Random, max_components: int = 6, max_nodes: int = 10,
               max_genus: int = 3, max_nu: int = 4) -> LogCurveData:
    """Random connected curve: a random spanning tree plus extra nodes, randomly oriented."""
    nv = rng.randint(1, max_components)
    ne = rng.randint(nv - 1, max(nv - 1, max_nodes))
    ends = []
    for v in range(1, nv):
        ends.append((v, rng.randrange(v)))
    while len(ends) < ne:
        ends.append((rng.randrange(nv), rng.randrange(nv)))
    rng.shuffle(ends)
    ends = [(a, b) if rng.random() < 0.5 else (b, a) for a, b in ends]
    perm = list(range(nv))
    rng.shuffle(perm)
    ends = [(perm[a], perm[b]) for a, b in ends]
    G = DualGraph(tuple(f"C{i}" for i in range(nv)), tuple(f"x{e}" for e in range(ne)), tuple(ends))
    genus = tuple(rng.randint(0, max_genus) for _ in range(nv))
    nu = tuple(rng.randint(1, max_nu) for _ in range(ne))
    return LogCurveData(G, genus, nu)
