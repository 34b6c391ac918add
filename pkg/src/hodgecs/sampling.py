"""Deterministic seeded sampling of classes and reference setups.

All randomness flows through one pinned generator so runs reproduce
byte-for-byte on every platform: xoshiro256** (Blackman-Vigna), with its
256-bit state expanded from the user seed and a stream/index pair by
splitmix64. The same (seed, index) always yields the same draw; distinct
stream tags keep independent sampling loops from sharing a stream.

Stream tags: 0 = random classes, 1 = cone classes, 2 = strict setups.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MissingSamplesError
from .ring import (
    FLAG_KAHLER,
    ClassVector,
    IntersectionRing,
    MixedSetup,
    mixed_setup,
)

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(x: int) -> tuple[int, int]:
    x = (x + _GOLDEN) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return x, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256StarStar:
    """xoshiro256** with splitmix64 state expansion from (seed, *salts)."""

    def __init__(self, seed: int, *salts: int):
        x = seed & _MASK
        for salt in salts:
            x ^= ((salt & _MASK) * _GOLDEN) & _MASK
            x, _ = _splitmix64(x)
        state = []
        for _ in range(4):
            x, out = _splitmix64(x)
            state.append(out)
        if not any(state):
            state[0] = _GOLDEN
        self._s = state

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n) by reduction; bias is negligible for
        the tiny ranges used here and keeps the stream platform-independent."""
        if n <= 0:
            raise ValueError("range must be positive")
        return self.next_u64() % n

    def int_between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def rational(self, height: int, positive: bool = False) -> Fraction:
        """Numerator in [-height, height] (or [1, height] when positive),
        denominator in [1, height]."""
        if positive:
            num = self.int_between(1, height)
        else:
            num = self.int_between(-height, height)
        den = self.int_between(1, height)
        return Fraction(num, den)


STREAM_CLASS = 0
STREAM_CONE = 1
STREAM_SETUP = 2


def sample_random_class(
    ring: IntersectionRing, degree: int, height: int, seed: int, index: int
) -> ClassVector:
    """Draw a nonzero degree-``degree`` class with height-bounded coefficients.

    Coefficients are rationals with numerator in [-height, height] and
    denominator in [1, height]; all-zero draws are rejected and redrawn from
    the same stream, so the zero class never occurs. Identical (seed, index)
    give identical output on every platform.
    """
    if height < 1:
        raise ValueError("height must be at least 1")
    rng = Xoshiro256StarStar(seed, STREAM_CLASS, index)
    dim = ring.dim(degree)
    while True:
        coeffs = [rng.rational(height) for _ in range(dim)]
        if any(coeffs):
            return ring.class_vector(degree, coeffs)


def random_cone_class(
    ring: IntersectionRing, height: int, seed: int, index: int
) -> ClassVector:
    """A strictly positive rational combination of the declared Kahler samples.

    The Kahler cone is user-declared through the ring's samples; interior
    points are closed under positive combinations, so the result is Kahler.
    """
    generators = ring.kahler_samples()
    if not generators:
        raise MissingSamplesError(f"ring {ring.name!r} declares no Kahler cone samples")
    rng = Xoshiro256StarStar(seed, STREAM_CONE, index)
    out = ring.zero_class(1)
    for gen in generators:
        out = out + gen.scaled(rng.rational(height, positive=True))
    return out.with_flag(FLAG_KAHLER)


def random_strict_setup(
    ring: IntersectionRing, p: int, height: int, seed: int, index: int
) -> MixedSetup:
    """A strict Kahler setup (w, w_1..w_(n-2p)) drawn from the declared cone."""
    generators = ring.kahler_samples()
    if not generators:
        raise MissingSamplesError(f"ring {ring.name!r} declares no Kahler cone samples")
    rng = Xoshiro256StarStar(seed, STREAM_SETUP, index)

    def draw() -> ClassVector:
        out = ring.zero_class(1)
        for gen in generators:
            out = out + gen.scaled(rng.rational(height, positive=True))
        return out.with_flag(FLAG_KAHLER)

    omega = draw()
    omegas = [draw() for _ in range(ring.n - 2 * p)]
    return mixed_setup(p, omega, omegas)
