"""Dual graphs of nodal curves and the invariants of their one-parameter degenerations.

Conventions.  Every node lists its two branches in order ``(y1, y2)``; this
fixes ``d_e = y1 - y2`` in the chain group ``C_1`` and ``p_e = p(y1)`` in the
cochain group ``C^1`` (the other branch gives ``-p_e``).  With these bases
``d1`` and ``d0`` are transposes of each other and the pairing between
``C_1`` and ``C^1`` is the dot product.

The monodromy model lives on ``H^1(Gamma) + H^1(X') + H_1(Gamma)`` (in that
order).  The middle block only records its rank ``2 * sum(genus)``; the
monodromy acts on it as the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .zlin import (
    AbelianGroupInvariants,
    IntMatrix,
    cokernel_invariants,
    column_hermite,
    det,
    kernel_basis,
    rank as zrank,
    right_inverse,
)


class CurveError(ValueError):
    """Malformed or unsupported curve data; ``field`` names the offending entry."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(message)
        self.field = field


@dataclass(frozen=True)
class DualGraph:
    """Vertices, edges and oriented edge ends.

    ``ends[e] = (v1, v2)`` are the vertex indices of the first and second
    branch of edge ``e``.  Branches are numbered ``2e`` (first) and ``2e + 1``
    (second), so ``iota`` swaps ``2e`` and ``2e + 1`` and ``eps(b) = b // 2``.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    ends: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise CurveError("vertex ids must be unique", "components")
        if len(set(self.edges)) != len(self.edges):
            raise CurveError("edge ids must be unique", "nodes")
        if len(self.ends) != len(self.edges):
            raise CurveError("every edge needs exactly two ends", "nodes")
        for e, (a, b) in enumerate(self.ends):
            if not (0 <= a < len(self.vertices) and 0 <= b < len(self.vertices)):
                raise CurveError(f"edge {self.edges[e]} has a dangling end", f"nodes[{e}]")

    @property
    def branches(self) -> range:
        return range(2 * len(self.edges))

    def eps(self, b: int) -> int:
        return b // 2

    def iota(self, b: int) -> int:
        return b ^ 1

    def zeta(self, b: int) -> int:
        return self.ends[b // 2][b % 2]

    def branch_sign(self, b: int) -> int:
        """``p_b = +p_e`` for the first branch and ``-p_e`` for the second."""
        return 1 if b % 2 == 0 else -1

    def degree(self, v: int) -> int:
        return sum(1 for b in self.branches if self.zeta(b) == v)

    def shared_edges(self, v: int, w: int) -> int:
        """``e(v, w)``: edges with one end at ``v`` and one at ``w``."""
        return sum(1 for (a, b) in self.ends if {a, b} == {v, w} or (v == w and a == b == v))

    def flipped(self, e: int) -> "DualGraph":
        ends = list(self.ends)
        ends[e] = (ends[e][1], ends[e][0])
        return DualGraph(self.vertices, self.edges, tuple(ends))

    def spanning_forest(self) -> list[int]:
        """Edge indices of a spanning forest, greedy in edge order."""
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        tree = []
        for e, (a, b) in enumerate(self.ends):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                tree.append(e)
        return tree


@dataclass(frozen=True)
class LogCurveData:
    graph: DualGraph
    genus: tuple[int, ...]
    nu: tuple[int, ...]

    def __post_init__(self):
        if len(self.genus) != len(self.graph.vertices):
            raise CurveError("one genus per component is required", "components")
        if len(self.nu) != len(self.graph.edges):
            raise CurveError("one multiplicity per node is required", "nodes")
        for i, g in enumerate(self.genus):
            if not isinstance(g, int) or g < 0:
                raise CurveError(f"component {self.graph.vertices[i]} has invalid genus {g!r}",
                                 f"components[{i}].genus")
        for i, n in enumerate(self.nu):
            if not isinstance(n, int) or n < 1:
                raise CurveError(f"node {self.graph.edges[i]} has invalid nu {n!r}", f"nodes[{i}].nu")

    @classmethod
    def build(cls, components: Sequence[tuple[str, int]],
              nodes: Sequence[tuple[str, tuple[str, str], int]]) -> "LogCurveData":
        vid = {}
        for i, (c, _) in enumerate(components):
            if c in vid:
                raise CurveError(f"duplicate component id {c!r}", f"components[{i}].id")
            vid[c] = i
        ends = []
        for i, (nid, (b1, b2), _) in enumerate(nodes):
            for b in (b1, b2):
                if b not in vid:
                    raise CurveError(f"node {nid!r} refers to unknown component {b!r}", f"nodes[{i}].branches")
            ends.append((vid[b1], vid[b2]))
        graph = DualGraph(tuple(c for c, _ in components), tuple(n for n, _, _ in nodes), tuple(ends))
        return cls(graph, tuple(g for _, g in components), tuple(n for _, _, n in nodes))

    def flipped(self, e: int) -> "LogCurveData":
        return LogCurveData(self.graph.flipped(e), self.genus, self.nu)

    @property
    def total_genus(self) -> int:
        return sum(self.genus)


# --- graph complexes ----------------------------------------------------------------

@dataclass(frozen=True)
class GraphComplexes:
    d1: IntMatrix  # C_1 -> C_0, |V| x |E|
    d0: IntMatrix  # C^0 -> C^1, |E| x |V|
    t: IntMatrix   # C^1 -> C_1

    @property
    def adjoint(self) -> bool:
        return self.d1 == self.d0.T


def build_complexes(G: DualGraph) -> GraphComplexes:
    nv, ne = len(G.vertices), len(G.edges)
    d1 = [[0] * ne for _ in range(nv)]
    for e in range(ne):
        # d_e = y1 - y2 maps to zeta(y1) - zeta(y2)
        d1[G.zeta(2 * e)][e] += 1
        d1[G.zeta(2 * e + 1)][e] -= 1
    d0 = [[0] * nv for _ in range(ne)]
    for b in G.branches:
        d0[G.eps(b)][G.zeta(b)] += G.branch_sign(b)
    return GraphComplexes(IntMatrix.from_rows(d1, ne), IntMatrix.from_rows(d0, nv), IntMatrix.identity(ne))


@dataclass(frozen=True)
class GraphHomology:
    H0: AbelianGroupInvariants
    H1: AbelianGroupInvariants
    h0: AbelianGroupInvariants  # H^0
    h1: AbelianGroupInvariants  # H^1
    cycles: IntMatrix           # basis of H_1 inside C_1
    cocycles: IntMatrix         # basis of H^0 inside C^0


def graph_homology(gc: GraphComplexes) -> GraphHomology:
    Z = kernel_basis(gc.d1)
    K0 = kernel_basis(gc.d0)
    out = GraphHomology(
        H0=cokernel_invariants(gc.d1),
        H1=AbelianGroupInvariants(Z.cols),
        h0=AbelianGroupInvariants(K0.cols),
        h1=cokernel_invariants(gc.d0),
        cycles=Z,
        cocycles=K0,
    )
    if not (out.H0.is_free and out.h1.is_free):
        raise AssertionError("graph (co)homology has torsion")
    return out


def laplacian_identities(G: DualGraph) -> dict:
    """The two vertex identities, each compared with direct edge counting."""
    gc = build_complexes(G)
    nv = len(G.vertices)
    lap = gc.d1 @ gc.t @ gc.d0
    expected = [[0] * nv for _ in range(nv)]
    for v in range(nv):
        for w in range(nv):
            if w != v:
                e = G.shared_edges(v, w)
                expected[v][v] += e
                expected[w][v] -= e
    first = lap == IntMatrix.from_rows(expected, nv)
    gram = gc.d0.T @ gc.t.T @ gc.d0  # pairing of d0 v with d0 w through t
    second = all(
        gram[v, w] == (-G.shared_edges(v, w) if v != w else
                       sum(G.shared_edges(v, x) for x in range(nv) if x != v))
        for v in range(nv) for w in range(nv))
    return {"laplacian": first, "pairing": second, "ok": first and second}


def graph_laplacian_identities(G: DualGraph) -> bool:
    return laplacian_identities(G)["ok"]


def is_connected(G: DualGraph) -> bool:
    return len(G.vertices) >= 1 and len(G.spanning_forest()) == len(G.vertices) - 1


def _require_connected(data: LogCurveData):
    if not is_connected(data.graph):
        raise CurveError("the curve must be connected for this computation", "nodes")


# --- Betti numbers and genus ---------------------------------------------------------------

@dataclass(frozen=True)
class BettiReport:
    h1_graph: int
    h1_X: int
    h1_fiber: int
    genus: int


def betti_report(data: LogCurveData) -> BettiReport:
    _require_connected(data)
    G = data.graph
    hom = graph_homology(build_complexes(G))
    h1_graph = hom.H1.free_rank
    h1_cohom = hom.h1.free_rank
    h1_X = h1_cohom + 2 * data.total_genus
    h1_fiber = h1_graph + h1_X
    if h1_fiber % 2:
        raise AssertionError("odd first Betti number for a closed orientable surface")
    genus = h1_fiber // 2
    if h1_cohom != 1 - len(G.vertices) + len(G.edges):
        raise AssertionError("graph cohomology rank disagrees with the Euler characteristic")
    if genus != 1 + data.total_genus + len(G.edges) - len(G.vertices):
        raise AssertionError("genus formula mismatch")
    return BettiReport(h1_graph, h1_X, h1_fiber, genus)


def gluing_euler_oracle(data: LogCurveData) -> int:
    """Genus from the Euler characteristic of components with boundary circles."""
    _require_connected(data)
    G = data.graph
    chi = sum(2 - 2 * g - G.degree(v) for v, g in enumerate(data.genus))
    if chi % 2:
        raise CurveError("odd Euler characteristic", "nodes")
    return (2 - chi) // 2


# --- spectral sequence ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralSequenceReport:
    E2: dict
    d2: IntMatrix
    Einf: dict
    h1_general_fiber: int
    genus: int


def spectral_sequence(data: LogCurveData) -> SpectralSequenceReport:
    _require_connected(data)
    G = data.graph
    gc = build_complexes(G)
    betti = betti_report(data)
    nv, ne = len(G.vertices), len(G.edges)
    E2 = {(0, 0): 1, (1, 0): betti.h1_X, (2, 0): nv, (0, 1): ne, (1, 1): 0, (2, 1): 0}
    d2 = -gc.d1
    r = zrank(d2)
    coker = cokernel_invariants(d2)
    if not coker.is_free:
        raise AssertionError("cokernel of d2 has torsion")
    Einf = dict(E2)
    Einf[(0, 1)] = ne - r
    Einf[(2, 0)] = coker.free_rank
    return SpectralSequenceReport(E2, d2, Einf, Einf[(1, 0)] + Einf[(0, 1)], betti.genus)


# --- monodromy --------------------------------------------------------------------------------

def monodromy_map(data: LogCurveData) -> IntMatrix:
    """``C_1 -> C^1``, ``d_e -> -nu(e) p_e``."""
    ne = len(data.graph.edges)
    return IntMatrix.diagonal([-n for n in data.nu], ne, ne)


def leading_minors(Q: IntMatrix) -> list[int]:
    return [det(Q.submatrix(range(k), range(k))) for k in range(1, Q.rows + 1)]


def monodromy_pairing(data: LogCurveData) -> IntMatrix:
    """Gram matrix ``-<h_j, c(h_k)>`` on the canonical basis of ``H_1(Gamma)``."""
    H = graph_homology(build_complexes(data.graph)).cycles
    Q = -(H.T @ monodromy_map(data) @ H)
    if Q != Q.T:
        raise AssertionError("monodromy pairing is not symmetric")
    if any(m <= 0 for m in leading_minors(Q)):
        raise AssertionError("monodromy pairing is not positive definite")
    return Q


def vertex_pairing(data: LogCurveData) -> IntMatrix:
    """``<d0 v, -c(t d0 w)>``; for ``nu = 1`` this is the graph pairing of coboundaries."""
    gc = build_complexes(data.graph)
    return gc.d0.T @ (-monodromy_map(data)) @ gc.t @ gc.d0


def vanishing_cocycle_basis(data: LogCurveData) -> tuple[IntMatrix, list[str], IntMatrix]:
    """Basis of ``H^1(Gamma) = C^1 / im d0`` and the projection onto it.

    The basis consists of the classes of ``p_e`` for edges outside a spanning
    forest; the projection ``C^1 -> Z^beta`` reads off their coordinates after
    completing a basis of ``im d0`` by those vectors.
    """
    G = data.graph
    ne = len(G.edges)
    gc = build_complexes(G)
    tree = set(G.spanning_forest())
    extra = [e for e in range(ne) if e not in tree]
    R = IntMatrix.from_columns([[int(i == e) for i in range(ne)] for e in extra], ne) if extra else IntMatrix(ne, 0)
    I = column_hermite(gc.d0)
    full = I.hstack(R)
    if full.cols != ne or abs(det(full)) != 1:
        raise AssertionError("non-tree edges do not complete a basis of C^1 / im d0")
    inv = right_inverse(full)
    proj = inv.select_rows(range(I.cols, ne))
    labels = [f"a(p_{G.edges[e]})" for e in extra]
    return R, labels, proj


@dataclass(frozen=True)
class MonodromyReport:
    pairing_gram: IntMatrix
    rho: IntMatrix
    N: IntMatrix
    basis_blocks: tuple[int, int, int]
    block: IntMatrix
    unipotency_index: int
    legend: tuple[str, ...]


def picard_lefschetz(data: LogCurveData, k: int = 1) -> MonodromyReport:
    _require_connected(data)
    G = data.graph
    hom = graph_homology(build_complexes(G))
    H = hom.cycles
    beta = H.cols
    g2 = 2 * data.total_genus
    _, vlabels, proj = vanishing_cocycle_basis(data)
    if len(vlabels) != beta:
        raise AssertionError("H^1 and H_1 of the graph have different ranks")
    M = k * (proj @ monodromy_map(data) @ H)
    n = 2 * beta + g2
    rows = [[0] * n for _ in range(n)]
    for i in range(beta):
        for j in range(beta):
            rows[i][beta + g2 + j] = M[i, j]
    N = IntMatrix.from_rows(rows, n)
    rho = IntMatrix.identity(n) + N
    if not (N @ N).is_zero():
        raise AssertionError("N does not square to zero")
    legend = tuple(vlabels) + tuple(f"H1(X')_{i + 1}" for i in range(g2)) + \
        tuple(f"h_{j + 1}=" + _cycle_label(H, j, G) for j in range(beta))
    return MonodromyReport(
        pairing_gram=monodromy_pairing(data),
        rho=rho,
        N=N,
        basis_blocks=(beta, g2, beta),
        block=M,
        unipotency_index=1 if M.is_zero() else 2,
        legend=legend,
    )


def _cycle_label(H: IntMatrix, j: int, G: DualGraph) -> str:
    parts = []
    for e in range(H.rows):
        c = H[e, j]
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}d_{G.edges[e]}")
    return "".join(parts) or "0"


def conjugating_check(rho: IntMatrix, target: IntMatrix, P: IntMatrix) -> bool:
    """Whether ``P rho P^{-1} == target`` with ``P`` unimodular."""
    return abs(det(P)) == 1 and P @ rho == target @ P
