"""Lefschetz operators, primitive subspaces, signed forms, decompositions."""

from fractions import Fraction

import pytest

from hodgecs import zoo
from hodgecs.errors import FlagError, SingularSplitError
from hodgecs.gaussian import GaussianRational
from hodgecs.lefschetz import (
    LefschetzDecomposer,
    gram_matrix_Q,
    hr_check,
    lefschetz_operator,
    mixed_lefschetz_decompose,
    primitive_basis,
)
from hodgecs.ring import (
    FLAG_KAHLER,
    integrate_real,
    mixed_setup,
    power,
    wedge,
)
from hodgecs.sampling import random_strict_setup, sample_random_class


# -- lefschetz operator ----------------------------------------------------------

def test_operator_p2_degree_zero():
    ring = zoo.get("p2").ring
    h = ring.sample("h")
    m, iso = lefschetz_operator(ring, 0, [h, h])
    assert iso and m.rows == m.cols == 1 and m[0, 0] == 1


def test_operator_empty_product_is_identity():
    ring = zoo.get("blp4").ring
    m, iso = lefschetz_operator(ring, 2, [])
    assert iso
    assert m == m.identity(2)


def test_operator_blowup_middle():
    ring = zoo.get("blp4").ring
    w = ring.sample("omega")
    m, iso = lefschetz_operator(ring, 1, [w, w])
    assert iso and m.rank() == 2


def test_operator_wrong_class_count():
    ring = zoo.get("blp4").ring
    from hodgecs.errors import DegreeError
    with pytest.raises(DegreeError):
        lefschetz_operator(ring, 1, [ring.sample("omega")])


def test_operator_not_iso_for_nef_product():
    # H*E = 0, so wedging with H^2 kills E and the degree-1 map degenerates.
    ring = zoo.get("blp4").ring
    h = ring.class_vector(1, [1, 0])
    m, iso = lefschetz_operator(ring, 1, [h, h])
    assert not iso


# -- primitive subspaces -------------------------------------------------------------

def test_primitive_p1xp1():
    ring = zoo.get("p1xp1").ring
    prim = primitive_basis(ring, 1, ring.sample("omega"), [])
    # (xa + yb)(a + b) = (x + y) ab vanishes exactly when x = -y.
    assert [tuple(v.coeffs) for v in prim.basis] == [
        (GaussianRational(1), GaussianRational(-1))
    ]
    assert prim.dim == prim.expected_dim == 1


def test_primitive_projective_space_empty():
    ring = zoo.get("p4").ring
    h = ring.sample("h")
    for p in (1, 2):
        prim = primitive_basis(ring, p, h, [h] * (4 - 2 * p))
        assert prim.dim == 0 == prim.expected_dim


def test_primitive_blowup():
    ring = zoo.get("blp4").ring
    w = ring.sample("omega")
    prim = primitive_basis(ring, 1, w, [w, w])
    assert [tuple(v.coeffs) for v in prim.basis] == [
        (GaussianRational(1), GaussianRational(-8))
    ]


def test_primitive_certificates_exact():
    ring = zoo.get("flag3").ring
    w = ring.sample("rho")
    aux = ring.sample("w21")
    prim = primitive_basis(ring, 1, w, [aux])
    assert prim.basis
    for v in prim.basis:
        assert wedge(wedge(v, w), aux).is_zero


def test_dimension_formula_seeded():
    for name in zoo.list_entries():
        ring = zoo.get(name).ring
        for p in range(1, ring.n // 2 + 1):
            for k in range(3):
                setup = random_strict_setup(ring, p, 6, seed=5, index=k)
                prim = primitive_basis(ring, p, setup.omega, setup.omegas)
                assert prim.dim == ring.dim(p) - ring.dim(p - 1), (name, p)


# -- gram matrices ----------------------------------------------------------------------

def test_gram_p1xp1():
    ring = zoo.get("p1xp1").ring
    form = gram_matrix_Q(ring, 1, [])
    assert form.sign_factor == -1
    assert [[form.unsigned_gram[i, j] for j in range(2)] for i in range(2)] == [
        [0, 1], [1, 0]]
    assert [[form.gram[i, j] for j in range(2)] for i in range(2)] == [
        [0, -1], [-1, 0]]
    assert form.inertia == (1, 1, 0)
    assert form.unsigned_inertia == (1, 1, 0)


def test_gram_projective_space_both_conventions():
    ring = zoo.get("p4").ring
    h = ring.sample("h")
    form = gram_matrix_Q(ring, 1, [h, h])
    assert form.gram[0, 0] == -1 and form.inertia == (0, 1, 0)
    assert form.unsigned_gram[0, 0] == 1 and form.unsigned_inertia == (1, 0, 0)


def test_gram_restricted_to_primitive_positive():
    ring = zoo.get("p1xp1").ring
    w = ring.sample("omega")
    form = gram_matrix_Q(ring, 1, [])
    prim = primitive_basis(ring, 1, w, [])
    diff = prim.basis[0]
    # integral of (a-b)^2 is -2; the signed form flips it to +2.
    value = form.sign_factor * integrate_real(wedge(diff, diff))
    assert value == 2


# -- hr_check ----------------------------------------------------------------------------

def test_hr_p1xp1():
    ring = zoo.get("p1xp1").ring
    report = hr_check(ring, 1, ring.sample("omega"), [])
    assert report.passed
    assert report.restricted_inertia == (1, 0, 0)
    assert report.restricted_gram[0, 0] == 2


def test_hr_projective_space_vacuous():
    ring = zoo.get("p4").ring
    h = ring.sample("h")
    report = hr_check(ring, 2, h, [])
    assert report.passed and report.primitive.dim == 0


def test_hr_blowup_value_60():
    ring = zoo.get("blp4").ring
    w = ring.sample("omega")
    report = hr_check(ring, 1, w, [w, w])
    assert report.passed
    # Oracle: (H-8E)^2 = H^2 + 64 E^2, wedged with (2H-E)^2 = 4H^2 + E^2 gives
    # 4 H^4 + 64 E^4 -> 4 - 64 = -60; the signed form contributes (-1)^1.
    assert report.restricted_gram[0, 0] == 60


def test_hr_requires_kahler_flags():
    ring = zoo.get("p1xp1").ring
    with pytest.raises(FlagError):
        hr_check(ring, 1, ring.sample("a"), [])


def test_hr_detects_false_flag():
    ring = zoo.get("blp4").ring
    fake = ring.class_vector(1, [0, 1], FLAG_KAHLER)  # E, deliberately mislabelled
    report = hr_check(ring, 1, fake, [fake, fake])
    assert not report.passed


# -- decomposition --------------------------------------------------------------------------

def test_decompose_pure_power():
    ring = zoo.get("blp4").ring
    w = ring.sample("omega")
    setup = mixed_setup(2, w, [])
    dec = mixed_lefschetz_decompose(power(w, 2), setup)
    assert dec.lam == 1
    assert all(c.is_zero for c in dec.components)
    assert dec.reconstruct() == power(w, 2)


def test_decompose_p1xp1_example():
    ring = zoo.get("p1xp1").ring
    w = ring.sample("omega")
    setup = mixed_setup(1, w, [])
    alpha = ring.class_vector(1, [3, 1])
    dec = mixed_lefschetz_decompose(alpha, setup)
    # lam = (int alpha*w) / (int w^2) = 4/2 = 2; remainder 3a+b-2(a+b) = a-b.
    assert dec.lam == 2
    assert dec.components[0] == ring.class_vector(1, [1, -1])
    assert dec.reconstruct() == alpha


def test_decompose_blowup_theta():
    ring = zoo.get("blp4").ring
    w = ring.sample("omega")
    setup = mixed_setup(2, w, [])
    theta = power(w, 2) + wedge(ring.class_vector(1, [1, -8]), w)
    dec = mixed_lefschetz_decompose(theta, setup)
    assert dec.lam == 1
    assert dec.components[0] == ring.class_vector(1, [1, -8])
    assert dec.components[1].is_zero
    assert all(c.is_zero for c in dec.certificates)


def test_decompose_identities_seeded():
    for name in ("p1xp1", "blp3", "blp4", "quadric4", "flag3"):
        ring = zoo.get(name).ring
        for p in range(1, ring.n // 2 + 1):
            setup = random_strict_setup(ring, p, 5, seed=2, index=0)
            decomposer = LefschetzDecomposer(setup)
            denom = integrate_real(wedge(power(setup.omega, 2 * p), setup.omega_p))
            for k in range(8):
                alpha = sample_random_class(ring, p, 5, seed=40, index=k)
                dec = decomposer.decompose(alpha)
                assert dec.reconstruct() == alpha
                assert all(c.is_zero for c in dec.certificates)
                numer = integrate_real(
                    wedge(wedge(alpha, power(setup.omega, p)), setup.omega_p))
                assert dec.lam == GaussianRational(Fraction(numer, denom))


def test_decompose_complex_class():
    ring = zoo.get("p1xp1").ring
    setup = mixed_setup(1, ring.sample("omega"), [])
    alpha = ring.class_vector(1, [GaussianRational(1, 2), GaussianRational(0, -1)])
    dec = mixed_lefschetz_decompose(alpha, setup)
    assert dec.reconstruct() == alpha
    assert all(c.is_zero for c in dec.certificates)


def test_decompose_rejects_boundary():
    ring = zoo.get("p1xp1").ring
    setup = mixed_setup(1, ring.sample("a"), [])
    with pytest.raises(FlagError):
        mixed_lefschetz_decompose(ring.class_vector(1, [1, 0]), setup)


def test_decompose_singular_split_reports_bad_flags():
    ring = zoo.get("blp4").ring
    fake = ring.class_vector(1, [0, 1], FLAG_KAHLER)  # E mislabelled as Kahler
    setup = mixed_setup(2, fake, [])
    with pytest.raises(SingularSplitError):
        LefschetzDecomposer(setup)
