"""Exact integer linear algebra.

Everything here works over Z with Python integers, so there is no overflow
and no floating point.  The central routine is :func:`smith_normal_form`;
kernels, images, cokernels, integer solving and the lattice operations used
to test exactness of sequences of subquotients are all built on it (or on
the Hermite normal form, which is used to canonicalize bases).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "AbelianGroupInvariants",
    "Subquotient",
    "smith_normal_form",
    "hermite_rows",
    "column_hermite",
    "kernel_basis",
    "image_basis",
    "cokernel_invariants",
    "rank",
    "det",
    "solve",
    "right_inverse",
    "left_inverse",
    "lattice_contains",
    "lattice_equal",
    "preimage",
    "is_unimodular",
]


class IntMatrix:
    """Immutable integer matrix stored row-major.

    ``IntMatrix(rows, cols, entries)`` takes a flat iterable of length
    ``rows * cols``; the usual way in is :meth:`from_rows`.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] = ()):
        e = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        if not e and rows * cols:
            e = (0,) * (rows * cols)
        if len(e) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(e)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", e)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(columns, rows).T if columns else cls(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[int, ...]:
        return self._e

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self._e[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    # algebra ------------------------------------------------------------

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         (self._e[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self._e, other._e
        bcols = [b[j::p] for j in range(p)] if p else []
        out = []
        for i in range(n):
            r = a[i * m:(i + 1) * m]
            nz = [(k, x) for k, x in enumerate(r) if x]
            for j in range(p):
                c = bcols[j]
                out.append(sum(x * c[k] for k, x in nz))
        return IntMatrix(n, p, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (x + y for x, y in zip(self._e, other._e)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, (x - y for x, y in zip(self._e, other._e)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-x for x in self._e))

    def __mul__(self, k: int) -> "IntMatrix":
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix(self.rows, self.cols, (k * x for x in self._e))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})" if self.rows else f"IntMatrix.zeros(0, {self.cols})"

    def is_zero(self) -> bool:
        return not any(self._e)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product; basis of a tensor product is ordered (i, j) -> i*dim2 + j."""
        rows, cols = self.rows * other.rows, self.cols * other.cols
        out = [0] * (rows * cols)
        for i in range(self.rows):
            for j in range(self.cols):
                x = self._e[i * self.cols + j]
                if not x:
                    continue
                for k in range(other.rows):
                    base = (i * other.rows + k) * cols + j * other.cols
                    for l in range(other.cols):
                        y = other._e[k * other.cols + l]
                        if y:
                            out[base + l] = x * y
        return IntMatrix(rows, cols, out)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise ValueError("row mismatch in hstack")
        return IntMatrix.from_rows([sum((m.row(i) for m in mats), ()) for i in range(self.rows)],
                                   sum(m.cols for m in mats))

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise ValueError("column mismatch in vstack")
        return IntMatrix(sum(m.rows for m in mats), self.cols, (x for m in mats for x in m._e))

    def block_diag(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        rows, cols = sum(m.rows for m in mats), sum(m.cols for m in mats)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                out[r0 + i][c0:c0 + m.cols] = m.row(i)
            r0 += m.rows
            c0 += m.cols
        return IntMatrix.from_rows(out, cols)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> "IntMatrix":
        rows, cols = list(rows), list(cols)
        return IntMatrix(len(rows), len(cols), (self._e[i * self.cols + j] for i in rows for j in cols))

    def select_columns(self, cols: Sequence[int] | range) -> "IntMatrix":
        return self.submatrix(range(self.rows), cols)

    def select_rows(self, rows: Sequence[int] | range) -> "IntMatrix":
        return self.submatrix(rows, range(self.cols))


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0 or any(x < 2 for x in t):
            raise ValueError(f"invalid invariants {self.free_rank}, {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


# --- normal forms ---------------------------------------------------------

def _rows_of(A: IntMatrix) -> list[list[int]]:
    return [list(A.row(i)) for i in range(A.rows)]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms.

    Pivoting takes the entry of least absolute value in the active block,
    which keeps coefficient growth small at the sizes used here.
    """
    m, n = A.rows, A.cols
    a = _rows_of(A)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    # v is kept transposed so column operations become row operations
    vt = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        vt[i], vt[j] = vt[j], vt[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rd, rs = a[dst], a[src]
        for k in range(n):
            if rs[k]:
                rd[k] -= q * rs[k]
        ud, us = u[dst], u[src]
        for k in range(m):
            if us[k]:
                ud[k] -= q * us[k]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in a:
            if r[src]:
                r[dst] -= q * r[src]
        vd, vs = vt[dst], vt[src]
        for k in range(n):
            if vs[k]:
                vd[k] -= q * vs[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, _round_div(a[i][t], p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, _round_div(a[t][j], p))
                    if a[t][j]:
                        clean = False
            if not clean:
                # bring the smallest leftover in row/column t to the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    U = IntMatrix.from_rows(u, m)
    D = IntMatrix.from_rows(a, n)
    V = IntMatrix.from_rows(vt, n).T
    return SmithForm(U, D, V)


def _round_div(x: int, p: int) -> int:
    # nearest-integer quotient keeps remainders small
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def hermite_rows(A: IntMatrix) -> IntMatrix:
    """Row Hermite normal form of the row lattice of ``A`` (zero rows dropped).

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``,
    so the result depends only on the lattice spanned by the rows.
    """
    a = [r for r in _rows_of(A) if any(r)]
    n = A.cols
    top = 0
    for col in range(n):
        if top >= len(a):
            break
        while True:
            nz = [i for i in range(top, len(a)) if a[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][col]))
            a[top], a[i0] = a[i0], a[top]
            p = a[top][col]
            done = True
            for i in range(top + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if top < len(a) and a[top][col]:
            if a[top][col] < 0:
                a[top] = [-x for x in a[top]]
            p = a[top][col]
            for i in range(top):
                q = a[i][col] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
            top += 1
        a = a[:top] + [r for r in a[top:] if any(r)]
    return IntMatrix.from_rows(a[:top], n)


def column_hermite(A: IntMatrix) -> IntMatrix:
    """Canonical basis (as columns) of the lattice spanned by the columns of ``A``."""
    return hermite_rows(A.T).T if A.cols else IntMatrix(A.rows, 0)


# --- derived primitives ---------------------------------------------------

def rank(A: IntMatrix) -> int:
    return hermite_rows(A).rows


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    a = _rows_of(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def is_unimodular(A: IntMatrix) -> bool:
    return A.rows == A.cols and abs(det(A)) == 1


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Saturated Z-basis of ``{x : A x = 0}`` as columns, in column Hermite form."""
    snf = smith_normal_form(A)
    r = snf.rank
    return column_hermite(snf.V.select_columns(range(r, A.cols)))


def image_basis(A: IntMatrix) -> IntMatrix:
    return column_hermite(A)


def cokernel_invariants(A: IntMatrix) -> AbelianGroupInvariants:
    """Invariants of ``Z^rows / A Z^cols``."""
    diag = smith_normal_form(A).diagonal
    nonzero = [d for d in diag if d]
    return AbelianGroupInvariants(A.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def solve(A: IntMatrix, B: IntMatrix) -> IntMatrix | None:
    """An integer ``X`` with ``A X == B``, or ``None`` if there is none."""
    if A.rows != B.rows:
        raise ValueError("shape mismatch in solve")
    snf = smith_normal_form(A)
    d = snf.diagonal
    r = snf.rank
    ub = snf.U @ B
    y = [[0] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        row = ub.row(i)
        if i < r:
            for j, x in enumerate(row):
                if x % d[i]:
                    return None
                y[i][j] = x // d[i]
        elif any(row):
            return None
    return snf.V @ IntMatrix.from_rows(y, B.cols)


def right_inverse(A: IntMatrix) -> IntMatrix:
    """Integer ``R`` with ``A R == I``; requires ``A`` surjective over Z."""
    R = solve(A, IntMatrix.identity(A.rows))
    if R is None:
        raise ValueError("matrix is not surjective over Z")
    return R


def left_inverse(A: IntMatrix) -> IntMatrix:
    """Integer ``L`` with ``L A == I``; requires ``A`` injective with saturated image."""
    return right_inverse(A.T).T


def lattice_contains(L: IntMatrix, M: IntMatrix) -> bool:
    """Whether every column of ``M`` lies in the Z-span of the columns of ``L``."""
    if M.cols == 0:
        return True
    if L.cols == 0:
        return M.is_zero()
    return solve(L, M) is not None


def lattice_equal(L1: IntMatrix, L2: IntMatrix) -> bool:
    return column_hermite(L1) == column_hermite(L2)


def preimage(G: IntMatrix, N: IntMatrix, L: IntMatrix) -> IntMatrix:
    """Generators of ``{N c : G N c in span(L)}`` (a sublattice of span(N)) as columns."""
    GN = G @ N
    if L.cols:
        K = kernel_basis(GN.hstack(-L))
        C = K.select_rows(range(N.cols))
    else:
        C = kernel_basis(GN)
    return column_hermite(N @ C)


@dataclass(frozen=True)
class Subquotient:
    """The group ``span(num) / span(den)`` inside ``Z^ambient``; requires den within num.

    Maps between subquotients are given by ambient integer matrices.  The
    exactness tests below are lattice equalities, so they see torsion as
    well as rank.
    """

    num: IntMatrix
    den: IntMatrix

    def __post_init__(self):
        if self.num.rows != self.den.rows:
            raise ValueError("num and den live in different ambients")
        if not lattice_contains(self.num, self.den):
            raise ValueError("den is not contained in num")

    @property
    def ambient(self) -> int:
        return self.num.rows

    def invariants(self) -> AbelianGroupInvariants:
        return cokernel_invariants(_coords(self.num, self.den))

    def image(self, f: IntMatrix) -> IntMatrix:
        return (f @ self.num)

    def maps_into(self, f: IntMatrix, other: "Subquotient") -> bool:
        return lattice_contains(other.num, f @ self.num) and lattice_contains(other.den, f @ self.den)

    def kernel_of(self, f: IntMatrix, target: "Subquotient") -> IntMatrix:
        """Lattice in num representing ker(f: self -> target), den included."""
        pre = preimage(f, self.num, target.den)
        return column_hermite(pre.hstack(self.den))

    def image_in(self, f: IntMatrix, target: "Subquotient") -> IntMatrix:
        return column_hermite((f @ self.num).hstack(target.den))


def _coords(basis_gens: IntMatrix, M: IntMatrix) -> IntMatrix:
    """Coordinates of the columns of ``M`` in a basis of span(basis_gens)."""
    B = column_hermite(basis_gens)
    if B.cols == 0:
        return IntMatrix(0, M.cols)
    X = solve(B, M)
    if X is None:
        raise ValueError("vectors are not in the lattice")
    return X


def is_exact(f: IntMatrix, g: IntMatrix, S1: Subquotient, S2: Subquotient, S3: Subquotient) -> bool:
    """Exactness of ``S1 --f--> S2 --g--> S3`` at ``S2``."""
    return lattice_equal(S1.image_in(f, S2), S2.kernel_of(g, S3))


def is_injective(f: IntMatrix, S: Subquotient, T: Subquotient) -> bool:
    return lattice_equal(S.kernel_of(f, T), column_hermite(S.den))


def is_surjective(f: IntMatrix, S: Subquotient, T: Subquotient) -> bool:
    return lattice_equal(S.image_in(f, T), column_hermite(T.num))


__all__ += ["is_exact", "is_injective", "is_surjective"]
