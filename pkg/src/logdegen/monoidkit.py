"""Affine monoids given by generators, the two-branch local models, and inertia actions.

Cone questions are answered exactly: a vector lies in the rational cone of a
finite set iff it is a non-negative combination of some linearly independent
subset (Caratheodory), and each such subset is solved over the rationals.
The sizes handled here (dimension <= 3, at most 8 generators) keep the
subset enumeration small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .zlin import IntMatrix, kernel_basis, rank as zrank, solve

Vector = tuple[int, ...]

MAX_DIM = 3
MAX_GENERATORS = 8


class ScaleError(ValueError):
    """Raised when an exhaustive monoid computation would be too large."""


# --- exact cone geometry ------------------------------------------------------

def _solve_rational(cols: Sequence[Vector], x: Vector) -> list[Fraction] | None:
    """Unique rational ``c`` with ``sum c_i cols_i == x`` for independent ``cols``, else None."""
    d, k = len(x), len(cols)
    rows = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(d)]
    piv_cols, r = [], 0
    for c in range(k):
        p = next((i for i in range(r, d) if rows[i][c]), None)
        if p is None:
            return None
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(d):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] for i in range(r, d)):
        return None
    return [rows[i][k] for i in range(k)]


def in_cone(gens: Sequence[Vector], x: Vector) -> bool:
    """Whether ``x`` is a non-negative rational combination of ``gens``."""
    if not any(x):
        return True
    gens = [g for g in gens if any(g)]
    d = len(x)
    for size in range(1, min(d, len(gens)) + 1):
        for sub in itertools.combinations(gens, size):
            if zrank(IntMatrix.from_columns(sub, d)) < size:
                continue
            c = _solve_rational(sub, x)
            if c is not None and all(v >= 0 for v in c):
                return True
    return False


def is_pointed(gens: Sequence[Vector]) -> bool:
    """The cone contains no line iff no nonzero generator has its negative in the cone."""
    nz = [g for g in gens if any(g)]
    for i, g in enumerate(nz):
        if in_cone(nz[:i] + nz[i + 1:], tuple(-v for v in g)):
            return False
    return True


def positive_functional(gens: Sequence[Vector], bound: int = 6) -> Vector:
    """A small integer functional that is strictly positive on every nonzero generator."""
    gens = [g for g in gens if any(g)]
    d = len(gens[0]) if gens else 0
    for b in range(1, bound + 1):
        for phi in itertools.product(range(-b, b + 1), repeat=d):
            if all(sum(p * v for p, v in zip(phi, g)) > 0 for g in gens):
                return phi
    raise ScaleError("no small positive functional found (cone may not be pointed)")


# --- monoids -----------------------------------------------------------------------

@dataclass(frozen=True)
class ToricMonoid:
    """Submonoid of ``Z^d`` generated by finitely many vectors."""

    ambient_dim: int
    generators: tuple[Vector, ...]
    _phi: Vector = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.generators)
        if any(len(g) != self.ambient_dim for g in gens):
            raise ValueError("generator of the wrong dimension")
        object.__setattr__(self, "generators", gens)
        if not is_pointed(gens):
            raise ValueError("monoid is not sharp")
        object.__setattr__(self, "_phi", positive_functional(gens) if any(any(g) for g in gens) else
                           (0,) * self.ambient_dim)

    @property
    def nonzero_generators(self) -> tuple[Vector, ...]:
        return tuple(g for g in self.generators if any(g))

    def _check_scale(self):
        if self.ambient_dim > MAX_DIM or len(self.generators) > MAX_GENERATORS:
            raise ScaleError(f"exhaustive monoid checks support d <= {MAX_DIM} and at most "
                             f"{MAX_GENERATORS} generators")

    def in_group(self, x: Vector) -> bool:
        gens = self.nonzero_generators
        if not gens:
            return not any(x)
        G = IntMatrix.from_columns(gens, self.ambient_dim)
        return solve(G, IntMatrix.from_columns([x], self.ambient_dim)) is not None

    def in_cone(self, x: Vector) -> bool:
        return in_cone(self.nonzero_generators, tuple(x))

    def contains(self, x: Vector) -> bool:
        """Membership by a depth-first search bounded by a positive functional."""
        x = tuple(x)
        gens = self.nonzero_generators
        phi = self._phi
        weight = lambda v: sum(p * a for p, a in zip(phi, v))
        if not any(x):
            return True
        if weight(x) <= 0:
            return False

        @lru_cache(maxsize=None)
        def search(i: int, rest: Vector) -> bool:
            if not any(rest):
                return True
            if i == len(gens) or weight(rest) <= 0:
                return False
            g = gens[i]
            cur = rest
            while weight(cur) >= 0:
                if search(i + 1, cur):
                    return True
                cur = tuple(a - b for a, b in zip(cur, g))
            return False

        return search(0, x)


def faces(P: ToricMonoid) -> list[frozenset[int]]:
    """All faces, each as the set of generator indices lying in it.

    A set ``S`` of generators spans a face iff ``S`` contains every generator in
    its linear span and the images of the remaining generators in the quotient
    by that span are nonzero and span a pointed cone.
    """
    P._check_scale()
    gens = P.generators
    idx = [i for i, g in enumerate(gens) if any(g)]
    zero = frozenset(i for i, g in enumerate(gens) if not any(g))
    d = P.ambient_dim
    found = []
    for size in range(len(idx) + 1):
        for S in itertools.combinations(idx, size):
            span = IntMatrix.from_columns([gens[i] for i in S], d) if S else IntMatrix(d, 0)
            Q = kernel_basis(span.T).T if S else IntMatrix.identity(d)
            rest = [i for i in idx if i not in S]
            images = [tuple((Q @ IntMatrix.from_columns([gens[i]], d)).column(0)) for i in rest]
            if any(not any(v) for v in images):
                continue
            if images and not is_pointed(images):
                continue
            found.append(frozenset(S) | zero)
    return found


def is_saturated(P: ToricMonoid, box_bound: int = 6) -> bool:
    """Bounded check: every group element of the cone inside ``[-B, B]^d`` lies in ``P``."""
    P._check_scale()
    for x in itertools.product(range(-box_bound, box_bound + 1), repeat=P.ambient_dim):
        if P.in_group(x) and P.in_cone(x) and not P.contains(x):
            return False
    return True


def numerical_monoid(*gens: int) -> ToricMonoid:
    return ToricMonoid(1, tuple((g,) for g in gens))


def free_monoid(d: int) -> ToricMonoid:
    return ToricMonoid(d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))


# --- the local model of a node of multiplicity n -------------------------------------------

@dataclass(frozen=True)
class QnModel:
    """``{(a, b) in N^2 : a = b mod n}`` with ``q = (1,1)``, ``q1 = (n,0)``, ``q2 = (0,n)``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def q(self) -> Vector:
        return (1, 1)

    @property
    def q1(self) -> Vector:
        return (self.n, 0)

    @property
    def q2(self) -> Vector:
        return (0, self.n)

    def contains(self, x: Sequence[int]) -> bool:
        a, b = x
        return a >= 0 and b >= 0 and (a - b) % self.n == 0

    def in_group(self, x: Sequence[int]) -> bool:
        a, b = x
        return (a - b) % self.n == 0

    def monoid(self) -> ToricMonoid:
        return ToricMonoid(2, (self.q, self.q1, self.q2))


def qn(n: int) -> QnModel:
    return QnModel(n)


def unique_decomposition(Q: QnModel, x: Sequence[int]) -> tuple[int, int, int]:
    """``(k, i, m)`` with ``x == k q + m q_i``; diagonal points use ``i = 1, m = 0``."""
    if not Q.contains(x):
        raise ValueError(f"{tuple(x)} is not in Q_{Q.n}")
    a, b = x
    if a >= b:
        return b, 1, (a - b) // Q.n
    return a, 2, (b - a) // Q.n


def recompose(Q: QnModel, k: int, i: int, m: int) -> Vector:
    qi = Q.q1 if i == 1 else Q.q2
    return (k * Q.q[0] + m * qi[0], k * Q.q[1] + m * qi[1])


def decompositions(Q: QnModel, x: Sequence[int]) -> list[tuple[int, int, int]]:
    """Brute-force list of ``(k, i, m)`` with ``k, m >= 0`` and ``x == k q + m q_i`` (``m = 0`` reported as ``i = 1``)."""
    a, b = x
    top = max(a, b, 0)
    out = set()
    for i in (1, 2):
        for k in range(top + 1):
            for m in range(top + 1):
                if recompose(Q, k, i, m) == (a, b):
                    out.add((k, 1 if m == 0 else i, m))
    return sorted(out)


# --- L_P and Z[I]/J^2 ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineMapOnInertia:
    """``gamma -> constant + <gamma, linear>``, an element of ``Z(1) + P^gp``."""

    constant: int
    linear: Vector

    def __call__(self, gamma: Sequence[int]) -> int:
        return self.constant + _dot(gamma, self.linear)


@dataclass(frozen=True)
class GroupAlgebraModJ2:
    """Class of an element of ``Z[I]`` modulo ``J^2``: augmentation and ``J/J^2`` component."""

    aug: int
    cls: Vector

    @classmethod
    def from_group_element(cls, delta: Sequence[int]) -> "GroupAlgebraModJ2":
        return cls(1, tuple(delta))

    @classmethod
    def from_group_ring(cls, terms: dict) -> "GroupAlgebraModJ2":
        """Reduce ``sum n_delta e^delta`` given as ``{delta: n_delta}``."""
        r = len(next(iter(terms))) if terms else 0
        aug = sum(terms.values())
        v = [0] * r
        for delta, n in terms.items():
            for i, x in enumerate(delta):
                v[i] += n * x
        return cls(aug, tuple(v))

    def act(self, gamma: Sequence[int]) -> "GroupAlgebraModJ2":
        """Right multiplication by ``e^gamma``."""
        return GroupAlgebraModJ2(self.aug, tuple(v + self.aug * g for v, g in zip(self.cls, gamma)))


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def chi(p: Sequence[int]) -> AffineMapOnInertia:
    return AffineMapOnInertia(0, tuple(p))


def inertia_action(gamma: Sequence[int], f: AffineMapOnInertia) -> AffineMapOnInertia:
    """``(gamma f)(v) = f(v + gamma)``."""
    return AffineMapOnInertia(f.constant + _dot(gamma, f.linear), f.linear)


def pairing(f: AffineMapOnInertia, x: GroupAlgebraModJ2) -> int:
    return x.aug * f.constant + _dot(f.linear, x.cls)


def evaluate_on_group_ring(f, terms: dict) -> int:
    """``h_f(sum n_delta e^delta) = sum n_delta f(delta)`` for any function ``f``."""
    return sum(n * f(delta) for delta, n in terms.items())


def boundary_matrix(r: int) -> IntMatrix:
    """Matrix of ``P^gp -> Hom(I, Z(1))`` from the torsor of lifts.

    For a basis vector ``p`` pick the lift ``f = chi_p`` and record
    ``gamma -> gamma(f) - f`` on the basis of ``I``.
    """
    cols = []
    for j in range(r):
        p = tuple(int(i == j) for i in range(r))
        f = AffineMapOnInertia(7, p)  # any lift works; the constant drops out
        col = []
        for i in range(r):
            gamma = tuple(int(k == i) for k in range(r))
            g = inertia_action(gamma, f)
            diff = AffineMapOnInertia(g.constant - f.constant, tuple(a - b for a, b in zip(g.linear, f.linear)))
            if any(diff.linear):
                raise AssertionError("difference of lifts is not constant")
            col.append(diff.constant)
        cols.append(col)
    return IntMatrix.from_columns(cols, r)


def lp_duality_check(r: int, trials: int = 20, seed: int = 0) -> dict:
    """Duality of ``L_P`` with ``Z[I]/J^2`` and the identity boundary map, for ``P^gp = Z^r``."""
    import random

    if r < 1:
        raise ValueError("inertia rank must be >= 1")
    rng = random.Random(seed)
    rv = lambda: tuple(rng.randint(-5, 5) for _ in range(r))

    # Gram matrix of the pairing on the bases (1, chi_{e_i}) and (1, e^{e_i} - 1)
    basis_L = [AffineMapOnInertia(1, (0,) * r)] + [chi(tuple(int(i == j) for i in range(r))) for j in range(r)]
    basis_G = [GroupAlgebraModJ2(1, (0,) * r)] + [GroupAlgebraModJ2(0, tuple(int(i == j) for i in range(r)))
                                                  for j in range(r)]
    gram = IntMatrix.from_rows([[pairing(f, x) for x in basis_G] for f in basis_L], r + 1)
    perfect = gram == IntMatrix.identity(r + 1)

    agrees, equivariant, kills_j2, non_affine_detected = True, True, True, False
    for _ in range(trials):
        f = AffineMapOnInertia(rng.randint(-5, 5), rv())
        terms: dict = {}
        for _ in range(rng.randint(1, 4)):
            d = rv()
            terms[d] = terms.get(d, 0) + rng.randint(-3, 3)
        x = GroupAlgebraModJ2.from_group_ring(terms)
        agrees &= evaluate_on_group_ring(f, terms) == pairing(f, x)
        gamma = rv()
        equivariant &= pairing(inertia_action(gamma, f), x) == pairing(f, x.act(gamma))
        # products (e^a - 1)(e^b - 1) generate J^2
        a, b = rv(), rv()
        zero = (0,) * r
        add = lambda u, v: tuple(s + t for s, t in zip(u, v))
        prod = {}
        for delta, n in ((add(a, b), 1), (a, -1), (b, -1), (zero, 1)):
            prod[delta] = prod.get(delta, 0) + n
        kills_j2 &= evaluate_on_group_ring(f, prod) == 0
        quad = lambda g: _dot(g, g)
        non_affine_detected |= evaluate_on_group_ring(quad, prod) != 0

    boundary = boundary_matrix(r)
    return {"pairing perfect": perfect, "pairing matches group ring": agrees,
            "equivariant": equivariant, "affine maps kill J^2": kills_j2,
            "non-affine maps do not kill J^2": non_affine_detected,
            "boundary is identity": boundary == IntMatrix.identity(r), "boundary": boundary}
