"""Pinned deterministic PRNG behaviour."""

from fractions import Fraction

import pytest

from hodgecs import zoo
from hodgecs.sampling import (
    Xoshiro256StarStar,
    random_cone_class,
    random_strict_setup,
    sample_random_class,
)


def test_same_seed_index_identical():
    ring = zoo.get("p1xp1").ring
    a = sample_random_class(ring, 1, 10, seed=7, index=0)
    b = sample_random_class(ring, 1, 10, seed=7, index=0)
    assert a == b


def test_different_indices_differ():
    ring = zoo.get("blp4").ring
    draws = {sample_random_class(ring, 1, 10, seed=7, index=k).coeffs for k in range(20)}
    assert len(draws) > 15


def test_height_one_is_integral():
    ring = zoo.get("blp4").ring
    for k in range(50):
        cls = sample_random_class(ring, 1, 1, seed=3, index=k)
        for c in cls.coeffs:
            assert c.im == 0 and c.re in (-1, 0, 1)


def test_zero_vector_never_sampled():
    # Rejection sampling makes the zero-class frequency exactly 0, far below
    # the 1% budget even on one-dimensional graded pieces.
    ring = zoo.get("p4").ring
    zeros = sum(
        1 for k in range(10_000)
        if sample_random_class(ring, 1, 10, seed=11, index=k).is_zero
    )
    assert zeros == 0


def test_raw_stream_pinned_values():
    # First outputs of the pinned xoshiro256** construction; any change to
    # the seeding or the core would silently break cross-run reproducibility.
    rng = Xoshiro256StarStar(0)
    assert [rng.next_u64() for _ in range(3)] == [
        11091344671253066420,
        13793997310169335082,
        1900383378846508768,
    ]
    rng2 = Xoshiro256StarStar(42, 1, 2)
    first = rng2.next_u64()
    assert first == Xoshiro256StarStar(42, 1, 2).next_u64()
    assert first != Xoshiro256StarStar(42, 2, 1).next_u64()


def test_sampled_class_pinned():
    ring = zoo.get("p1xp1").ring
    cls = sample_random_class(ring, 1, 10, seed=7, index=0)
    assert [ (c.re, c.im) for c in cls.coeffs ] == PINNED_SAMPLE


def test_cone_class_is_kahler_flagged_and_interior():
    ring = zoo.get("blp4").ring
    for k in range(20):
        w = random_cone_class(ring, 10, seed=5, index=k)
        assert w.flag == "kahler"
        a, b = w.coeffs[0].re, w.coeffs[1].re
        assert a > -b > 0  # a H - |b| E with a > |b| > 0


def test_random_setup_shape():
    ring = zoo.get("blp4").ring
    setup = random_strict_setup(ring, 1, 10, seed=9, index=4)
    assert setup.mode == "strict"
    assert len(setup.omegas) == 2
    assert setup.omega_p.degree == 2


def test_height_validation():
    ring = zoo.get("p2").ring
    with pytest.raises(ValueError):
        sample_random_class(ring, 1, 0, seed=1, index=0)


# Frozen draw for (seed=7, index=0) at height 10 on the quadric surface;
# computed once from the pinned generator and locked in.
PINNED_SAMPLE = [(Fraction(-2, 3), Fraction(0)), (Fraction(-1, 9), Fraction(0))]
