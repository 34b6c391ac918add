"""Exact dense linear algebra over the Gaussian rationals.

Everything here is deterministic: pivots are chosen leftmost-first and
normalised to 1, so echelon forms, kernel bases and particular solutions are
canonical and reproducible byte-for-byte. Inertia is computed by symmetric
(conjugate-)congruence elimination, never by eigenvalues, so no square roots
are needed and the answer is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .gaussian import GQ_ONE, GQ_ZERO, GaussianRational

Vector = tuple[GaussianRational, ...]


def as_vector(entries: Sequence) -> Vector:
    return tuple(GaussianRational.coerce(e) for e in entries)


class Matrix:
    """An immutable rows x cols matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [as_vector(row) for row in entries]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)
        object.__setattr__(self, "_e", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[GQ_ONE if i == j else GQ_ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[GQ_ZERO] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        cols = [as_vector(c) for c in columns]
        if not cols:
            return cls.zeros(rows or 0, 0)
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise ValueError("ragged columns")
        return cls([[c[i] for c in cols] for i in range(n)])

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._e)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._e)
        return f"Matrix[{self.rows}x{self.cols}: {body}]"

    # -- basic algebra -------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix([[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def conjugate(self) -> "Matrix":
        return Matrix([[x.conjugate() for x in row] for row in self._e])

    def conj_transpose(self) -> "Matrix":
        return self.transpose().conjugate()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        return Matrix([
            [
                sum((self._e[i][k] * other._e[k][j] for k in range(self.cols)), GQ_ZERO)
                for j in range(other.cols)
            ]
            for i in range(self.rows)
        ])

    def apply(self, vec: Sequence) -> Vector:
        v = as_vector(vec)
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(
            sum((self._e[i][j] * v[j] for j in range(self.cols)), GQ_ZERO)
            for i in range(self.rows)
        )

    def scaled(self, factor) -> "Matrix":
        f = GaussianRational.coerce(factor)
        return Matrix([[x * f for x in row] for row in self._e])

    def is_real(self) -> bool:
        return all(x.is_real for row in self._e for x in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._e[i][j] == self._e[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_hermitian(self) -> bool:
        return self.rows == self.cols and all(
            self._e[i][j] == self._e[j][i].conjugate()
            for i in range(self.rows)
            for j in range(i + 1)
        )

    # -- elimination ---------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns.

        Pivots are taken leftmost-first from the topmost available row and
        normalised to 1, so the result is the canonical echelon basis of the
        row space.
        """
        a = [list(row) for row in self._e]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if a[i][c]), None)
            if pivot_row is None:
                continue
            a[r], a[pivot_row] = a[pivot_row], a[r]
            inv = GQ_ONE / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(self.rows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return Matrix(a), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[Vector]:
        """Canonical kernel basis.

        The basis spans ker(self) and is returned in reduced echelon form
        (each vector's leading coordinate is 1, leading coordinates strictly
        increase, and each leading coordinate is zero in the other vectors),
        so the output is independent of how the kernel was found.
        """
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        if not free:
            return []
        raw = []
        for f in free:
            v = [GQ_ZERO] * self.cols
            v[f] = GQ_ONE
            for r, c in enumerate(pivots):
                v[c] = -red._e[r][f]
            raw.append(v)
        canon, _ = Matrix(raw).rref()
        return [canon.row(i) for i in range(len(free))]

    def solve(self, b: Sequence) -> Optional[Vector]:
        """Solve self @ x = b exactly, or return None if inconsistent.

        Among all solutions the canonical one is returned: free variables of
        the echelon parametrization are set to zero, so pivot variables carry
        the full right-hand side ("pivot-first" convention).
        """
        rhs = as_vector(b)
        if len(rhs) != self.rows:
            raise ValueError("right-hand side length does not match row count")
        if self.rows == 0:
            return tuple([GQ_ZERO] * self.cols)
        aug = Matrix([list(self._e[i]) + [rhs[i]] for i in range(self.rows)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [GQ_ZERO] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red._e[r][self.cols]
        return tuple(x)

    # -- inertia ---------------------------------------------------------

    def inertia(self, hermitian: bool = False) -> tuple[int, int, int]:
        """Sylvester inertia (n_plus, n_minus, n_zero) of a quadratic form.

        With ``hermitian`` unset the matrix must be real symmetric; set, it
        must equal its conjugate transpose. The form is reduced by exact
        congruence: a nonzero diagonal pivot eliminates its row and column,
        and when the active block has an all-zero diagonal a nonzero
        off-diagonal entry is split off as a hyperbolic pair, which always
        contributes (1, 1, 0).
        """
        if self.rows != self.cols:
            raise ValueError("inertia requires a square matrix")
        if hermitian:
            if not self.is_hermitian():
                raise ValueError("matrix is not conjugate-symmetric")
        else:
            if not self.is_real():
                raise ValueError("symmetric inertia requires real entries; "
                                 "pass hermitian=True for complex forms")
            if not self.is_symmetric():
                raise ValueError("matrix is not symmetric")

        a = [list(row) for row in self._e]
        n_plus = n_minus = n_zero = 0
        while a:
            k = len(a)
            d_idx = next((i for i in range(k) if a[i][i]), None)
            if d_idx is not None:
                _sym_swap(a, 0, d_idx)
                d = a[0][0]
                # Hermitian diagonals are real; real-symmetric ones trivially so.
                if d.re > 0:
                    n_plus += 1
                else:
                    n_minus += 1
                a = [
                    [a[i][j] - a[i][0] * a[0][j] / d for j in range(1, k)]
                    for i in range(1, k)
                ]
                continue
            off = next(
                ((i, j) for i in range(k) for j in range(i + 1, k) if a[i][j]),
                None,
            )
            if off is None:
                n_zero += k
                break
            i, j = off
            _sym_swap(a, 0, i)
            _sym_swap(a, 1, j)  # j > i >= 0, so j never collides with slot 0
            t = a[0][1]
            tc = t.conjugate()
            # Schur complement w.r.t. the invertible block [[0, t], [conj(t), 0]],
            # whose own inertia is (1, 1, 0).
            n_plus += 1
            n_minus += 1
            a = [
                [
                    a[p][q] - a[p][0] * a[1][q] / tc - a[p][1] * a[0][q] / t
                    for q in range(2, k)
                ]
                for p in range(2, k)
            ]
        return n_plus, n_minus, n_zero


def _sym_swap(a: list[list[GaussianRational]], i: int, j: int) -> None:
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


# Functional aliases matching the operation names used throughout the docs.

def nullspace(m: Matrix) -> list[Vector]:
    return m.nullspace()


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    return m.solve(b)


def inertia(m: Matrix, hermitian: bool = False) -> tuple[int, int, int]:
    return m.inertia(hermitian=hermitian)


def rank(m: Matrix) -> int:
    return m.rank()


def real_fraction(x: GaussianRational) -> Fraction:
    """Extract the rational value of a provably real scalar."""
    if x.im != 0:
        raise ArithmeticError(f"expected a real value, got {x}")
    return x.re
