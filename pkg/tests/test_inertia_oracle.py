"""Inertia cross-checked against an independent exact eigenvalue-count oracle.

The oracle never touches the congruence code path: it counts characteristic
polynomial roots by sign with Sturm sequences (sympy), which is exact for the
rational/Gaussian-rational matrices used here. Skipped when sympy is absent.
"""

from fractions import Fraction

import pytest

sympy = pytest.importorskip("sympy")

from hodgecs.gaussian import GaussianRational
from hodgecs.linalg import Matrix
from hodgecs.sampling import Xoshiro256StarStar

_LAM = sympy.Symbol("lam")


def sturm_inertia(sym_matrix):
    n = sym_matrix.rows
    poly = sympy.Poly(sym_matrix.charpoly(_LAM).as_expr(), _LAM)
    nz = 0
    while poly.eval(0) == 0:
        poly = sympy.Poly(sympy.cancel(poly.as_expr() / _LAM), _LAM)
        nz += 1
    np_ = poly.count_roots(0, sympy.oo)
    nm = poly.count_roots(-sympy.oo, 0)
    assert np_ + nm + nz == n
    return (np_, nm, nz)


def test_real_symmetric_matches_root_counts():
    rng = Xoshiro256StarStar(123)
    for trial in range(30):
        n = rng.int_between(1, 5)
        raw = [
            [Fraction(rng.int_between(-4, 4), rng.int_between(1, 3)) for _ in range(n)]
            for _ in range(n)
        ]
        sym = [[raw[i][j] + raw[j][i] for j in range(n)] for i in range(n)]
        mine = Matrix(sym).inertia()
        oracle = sturm_inertia(sympy.Matrix([
            [sympy.Rational(x.numerator, x.denominator) for x in row] for row in sym
        ]))
        assert mine == oracle, sym


def test_hermitian_matches_root_counts():
    rng = Xoshiro256StarStar(321)
    for trial in range(20):
        n = rng.int_between(1, 4)
        raw = [
            [GaussianRational(rng.int_between(-3, 3), rng.int_between(-3, 3))
             for _ in range(n)]
            for _ in range(n)
        ]
        herm = [[raw[i][j] + raw[j][i].conjugate() for j in range(n)] for i in range(n)]
        for i in range(n):
            herm[i][i] = GaussianRational(herm[i][i].re, 0)
        mine = Matrix(herm).inertia(hermitian=True)
        oracle = sturm_inertia(sympy.Matrix([
            [
                sympy.Rational(x.re.numerator, x.re.denominator)
                + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
                for x in row
            ]
            for row in herm
        ]))
        assert mine == oracle, herm
