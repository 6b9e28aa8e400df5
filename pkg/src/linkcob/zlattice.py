"""Exact integer linear algebra.

Everything here works over Python's arbitrary precision ``int``; no
floating point is used anywhere.  Submodules of ``Z^n`` are stored by row
generators in Hermite normal form, so two generating sets of the same
lattice give equal :class:`Submodule` values.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable rectangular matrix of Python integers.

    The shape is stored explicitly so that ``0 x n`` and ``n x 0`` matrices
    are representable; they show up constantly (the unknot has a ``0 x 0``
    Seifert matrix).

    >>> A = IntMatrix([[1, 2], [3, 4]])
    >>> (A @ IntMatrix.identity(2)) == A
    True
    >>> IntMatrix([], cols=3).shape
    (0, 3)
    """

    __slots__ = ("_data", "rows", "cols", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: Optional[int] = None,
                 cols: Optional[int] = None):
        try:
            body = tuple(tuple(operator.index(x) for x in row) for row in data)
        except TypeError:
            raise ValueError("matrix entries must be integers") from None
        if rows is not None and rows != len(body):
            if body or cols:
                raise ValueError(f"expected {rows} rows, got {len(body)}")
            body = tuple(() for _ in range(rows))
        if body:
            width = len(body[0])
            if any(len(r) != width for r in body):
                raise ValueError("ragged matrix rows")
            if cols is not None and cols != width:
                raise ValueError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        self._data = body
        self.rows = len(body)
        self.cols = width
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows=rows, cols=cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], rows=n, cols=n)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)],
                   rows=n, cols=n)

    @classmethod
    def block_diag(cls, *blocks: "IntMatrix") -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._data):
                out[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls(out, rows=rows, cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], rows=rows,
                   cols=len(columns))

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat tuple of the entries."""
        return tuple(x for row in self._data for x in row)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._data), rows=self.cols, cols=self.rows) if self.rows \
            else IntMatrix.zeros(self.cols, 0)

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def take_rows(self, idx: Iterable[int]) -> "IntMatrix":
        return IntMatrix([self._data[i] for i in idx], cols=self.cols)

    def take_cols(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix([[row[j] for j in idx] for row in self._data], rows=self.rows,
                         cols=len(idx))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return IntMatrix([a + b for a, b in zip(self._data, other._data)], rows=self.rows,
                         cols=self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return IntMatrix(self._data + other._data, cols=self.cols)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.T._data if other.cols else ()
        out = [[sum(a * b for a, b in zip(row, c)) for c in ocols] for row in self._data]
        return IntMatrix(out, rows=self.rows, cols=other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product ``self @ vec`` for a column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
                         rows=self.rows, cols=self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._data], rows=self.rows, cols=self.cols)

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self._data], rows=self.rows, cols=self.cols)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        if not self.rows or not self.cols:
            return f"IntMatrix(shape={self.shape})"
        return f"IntMatrix({self.tolist()})"

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols} matrix]"
        width = max(len(str(x)) for x in self.entries)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self._data)


def as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix(a)


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if not A.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: IntMatrix) -> int:
    H, _ = hnf(A)
    return sum(1 for r in H if any(r))


# -- Hermite normal form ------------------------------------------------------

def _row_combine(M, i, j, a, b, c, d):
    """Replace rows (i, j) by (a*r_i + b*r_j, c*r_i + d*r_j)."""
    ri, rj = M[i], M[j]
    M[i] = [a * x + b * y for x, y in zip(ri, rj)]
    M[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is in
    row echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)``, and zero rows come last.
    """
    A = as_matrix(A)
    m, n = A.shape
    H = A.tolist()
    U = IntMatrix.identity(m).tolist()
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return IntMatrix(H, rows=m, cols=n), IntMatrix(U, rows=m, cols=m)


# -- Smith normal form --------------------------------------------------------

@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``D`` diagonal, ``d_1 | d_2 | ...`` and zeros last."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))


def snf(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form with transforms.

    Pivot choice is the nonzero entry of least absolute value in the
    remaining block, ties broken by lowest (row, column).
    """
    A = as_matrix(A)
    m, n = A.shape
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    # V is kept transposed so column operations become row operations.
    Vt = IntMatrix.identity(n).tolist()

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        Vt[j], Vt[k] = Vt[k], Vt[j]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for row in D:
            row[dst] -= q * row[src]
        Vt[dst] = [x - q * y for x, y in zip(Vt[dst], Vt[src])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            swap_cols(t, j)
        while True:
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // piv
                    D[i] = [x - q * y for x, y in zip(D[i], D[t])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // piv)
                    dirty = dirty or D[t][j] != 0
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % piv), None)
                if bad is None:
                    break
                # pull a non-multiple into row t; the next pass lowers the pivot
                i = bad[0]
                D[t] = [x + y for x, y in zip(D[t], D[i])]
                U[t] = [x + y for x, y in zip(U[t], U[i])]
            # move the smallest entry of row t / column t to the pivot slot
            cand = [(abs(D[i][t]), 0, i, t) for i in range(t, m) if D[i][t]]
            cand += [(abs(D[t][j]), 1, t, j) for j in range(t, n) if D[t][j]]
            _, _, i, j = min(cand)
            if i != t:
                D[t], D[i] = D[i], D[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                swap_cols(t, j)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SnfDecomposition(IntMatrix(D, rows=m, cols=n), IntMatrix(U, rows=m, cols=m),
                            IntMatrix(Vt, rows=n, cols=n).T)


def invariant_factors(A: IntMatrix) -> tuple[int, ...]:
    return snf(A).diagonal


# -- submodules ---------------------------------------------------------------

@dataclass(frozen=True)
class Submodule:
    """A submodule of ``Z^ambient_rank`` given by independent row generators.

    The basis is kept in Hermite normal form, so equality is equality of
    lattices.  Build instances with :meth:`from_generators`.
    """

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def from_generators(cls, gens, ambient_rank: Optional[int] = None) -> "Submodule":
        G = gens if isinstance(gens, IntMatrix) else IntMatrix(gens, cols=ambient_rank)
        if ambient_rank is not None and G.cols != ambient_rank:
            raise ValueError("generator length does not match ambient rank")
        H, _ = hnf(G)
        keep = [i for i in range(H.rows) if any(H[i])]
        return cls(G.cols, H.take_rows(keep))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Submodule":
        return cls(ambient_rank, IntMatrix([], cols=ambient_rank))

    @classmethod
    def full(cls, ambient_rank: int) -> "Submodule":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer ``c`` with ``c @ basis == v``, or None."""
        if len(v) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        # basis is in echelon form: back-substitute on pivot columns
        rest = list(v)
        coeffs = []
        for row in self.basis:
            p = next(j for j, x in enumerate(row) if x)
            q, r = divmod(rest[p], row[p])
            if r:
                return None
            coeffs.append(q)
            if q:
                rest = [a - q * b for a, b in zip(rest, row)]
        return tuple(coeffs) if not any(rest) else None

    def contains_module(self, other: "Submodule") -> bool:
        return all(r in self for r in other.basis)

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule.from_generators(self.basis.vstack(other.basis))

    def with_vector(self, v: Sequence[int]) -> "Submodule":
        return Submodule.from_generators(self.basis.vstack(IntMatrix([v])))

    def intersection(self, other: "Submodule") -> "Submodule":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        if not self.rank or not other.rank:
            return Submodule.zero(self.ambient_rank)
        # (a, b) with a P + b Q = 0 gives the common vectors a P
        rel = kernel_basis(self.basis.T.hstack(other.basis.T))
        a = rel.basis.take_cols(range(self.rank))
        return Submodule.from_generators(a @ self.basis if a.rows else
                                         IntMatrix([], cols=self.ambient_rank))

    def project(self, idx: Sequence[int]) -> "Submodule":
        return Submodule.from_generators(self.basis.take_cols(idx))

    def index(self) -> int:
        """``[Z^n : self]`` for a full-rank submodule."""
        if self.rank != self.ambient_rank:
            raise ValueError("index of a lower-rank submodule is infinite")
        out = 1
        for i in range(self.rank):
            out *= self.basis[i, i]
        return out

    def __str__(self) -> str:
        return f"span{[list(r) for r in self.basis]} in Z^{self.ambient_rank}"


def kernel_basis(A: IntMatrix) -> Submodule:
    """The lattice ``{x in Z^cols : A x = 0}`` (always pure)."""
    A = as_matrix(A)
    # U A^T = H; rows of U against zero rows of H span the kernel
    H, U = hnf(A.T)
    zero = [i for i in range(H.rows) if not any(H[i])]
    return Submodule.from_generators(U.take_rows(zero) if zero else IntMatrix([], cols=A.cols),
                                     A.cols)


def saturate(M: Submodule) -> Submodule:
    """Smallest pure submodule containing ``M``: ``(Q M) ∩ Z^n``."""
    if M.rank == 0:
        return M
    perp = kernel_basis(M.basis)
    if perp.rank == 0:
        return Submodule.full(M.ambient_rank)
    return kernel_basis(perp.basis)


def is_pure(M: Submodule) -> bool:
    return all(d == 1 for d in snf(M.basis).diagonal)


def solve(A: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some integral ``x`` with ``A x = b``, or None when none exists."""
    A = as_matrix(A)
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    dec = snf(A)
    c = dec.U.apply(b)
    d = dec.diagonal
    y = [0] * A.cols
    for i, ci in enumerate(c):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if ci:
                return None
        else:
            if ci % di:
                return None
            y[i] = ci // di
    return dec.V.apply(y)


@dataclass(frozen=True)
class CokernelData:
    """Projection data for ``Z^rows / colspan(A)``.

    ``moduli[i]`` is the order of the i-th quotient generator (0 for a free
    generator); ``projection @ x`` reduced modulo ``moduli`` gives the
    coordinates of a vector in the quotient, and ``lift`` maps quotient
    generators back to representatives in ``Z^rows``.
    """

    moduli: tuple[int, ...]
    projection: IntMatrix
    lift: IntMatrix

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(v % d if d else v for v, d in zip(self.projection.apply(x), self.moduli))


def cokernel(A: IntMatrix):
    """``Z^rows / colspan(A)`` as a group plus :class:`CokernelData`."""
    from .abgroup import FgAbelianGroup

    A = as_matrix(A)
    dec = snf(A)
    diag = list(dec.diagonal) + [0] * (A.rows - min(A.shape))
    keep = [i for i, d in enumerate(diag) if d != 1]
    moduli = tuple(diag[i] for i in keep)
    # lifts are the columns of U^{-1} for the kept indices
    Uinv = unimodular_inverse(dec.U)
    data = CokernelData(moduli, dec.U.take_rows(keep), Uinv.take_cols(keep))
    torsion = tuple(d for d in moduli if d)
    return FgAbelianGroup(len(moduli) - len(torsion), torsion), data


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant ±1."""
    n = U.rows
    if not U.is_square():
        raise ValueError("inverse of a non-square matrix")
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    out = []
    for row in M:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in tail])
    return IntMatrix(out, rows=n, cols=n)
