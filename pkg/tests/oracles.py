"""Independent oracles for the test-suite.

Nothing here calls the package's Smith form or graph code: invariant factors
come from sympy, ranks from fraction Gaussian elimination, cycle ranks from
networkx, and lattice determinants from brute-force spanning-tree counts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod

import networkx as nx
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from logdegen.zlin import IntMatrix


def q_rank(A: IntMatrix) -> int:
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


def sympy_invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero invariant factors (absolute values, with 1s) from sympy."""
    if A.rows == 0 or A.cols == 0:
        return []
    facs = invariant_factors(Matrix(A.tolist()), domain=ZZ)
    return [abs(int(f)) for f in facs if f != 0]


def cokernel_oracle(A: IntMatrix) -> tuple[int, list[int]]:
    """``(free rank, torsion)`` of ``Z^rows / im A``."""
    facs = sympy_invariant_factors(A)
    return A.rows - len(facs), sorted(f for f in facs if f > 1)


def homology_oracle(K, n: int) -> tuple[int, list[int]]:
    """``(free rank, torsion)`` of ``H^n`` of a complex of free modules.

    Torsion of ``H^n`` is the torsion of ``coker d^{n-1}`` because ``ker d^n``
    is saturated.
    """
    d_out, d_in = K.diff(n), K.diff(n - 1)
    free = K.rank(n) - q_rank(d_out) - q_rank(d_in)
    return free, cokernel_oracle(d_in)[1]


def to_networkx(G) -> nx.MultiGraph:
    M = nx.MultiGraph()
    M.add_nodes_from(range(len(G.vertices)))
    for e, (a, b) in enumerate(G.ends):
        M.add_edge(a, b, key=e)
    return M


def cycle_rank(G) -> int:
    M = to_networkx(G)
    return M.number_of_edges() - M.number_of_nodes() + nx.number_connected_components(M)


def is_connected(G) -> bool:
    return nx.is_connected(to_networkx(G)) if G.vertices else False


def weighted_tree_count(G, nu) -> int:
    """``sum over spanning trees T of prod_{e not in T} nu(e)``.

    This equals the determinant of the weighted cycle lattice Gram matrix.
    Brute force over edge subsets of size ``|V| - 1``.
    """
    nv, ne = len(G.vertices), len(G.edges)
    total = 0
    for T in itertools.combinations(range(ne), nv - 1):
        sub = nx.MultiGraph()
        sub.add_nodes_from(range(nv))
        for e in T:
            sub.add_edge(*G.ends[e])
        if nx.is_tree(sub):
            total += prod(nu[e] for e in range(ne) if e not in T)
    return total


def euler_genus(genus, ends) -> int:
    """Genus of the glued surface computed from vertex degrees by hand."""
    deg = [0] * len(genus)
    for a, b in ends:
        deg[a] += 1
        deg[b] += 1
    chi = sum(2 - 2 * g - d for g, d in zip(genus, deg))
    return (2 - chi) // 2
