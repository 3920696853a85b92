"""Exact/approximate scalar comparison, deterministic randomness, rational circle points.

Exact mode works entirely in ``fractions.Fraction``; angles are realized as
rational points on the unit circle via the Pythagorean parametrization
c = (1-t^2)/(1+t^2), s = 2t/(1+t^2), which keeps every downstream identity
exactly checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int, float]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class ScalarMode:
    """Comparison mode: exact rational equality or float with relative tolerance."""

    kind: str  # "exact" | "float"
    tolerance: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown scalar mode {self.kind!r}")
        if self.kind == "float" and not self.tolerance > 0:
            raise ValueError("float mode requires tolerance > 0")

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @staticmethod
    def exact() -> "ScalarMode":
        return ScalarMode("exact")

    @staticmethod
    def floating(tolerance: float = 1e-9) -> "ScalarMode":
        return ScalarMode("float", tolerance)


EXACT = ScalarMode.exact()


def scalar_eq(a: Scalar, b: Scalar, mode: ScalarMode = EXACT) -> bool:
    """Equality under the given mode: literal for exact, relative for float."""
    if mode.is_exact:
        return a == b
    am, bm = float(a), float(b)
    return abs(am - bm) <= mode.tolerance * max(1.0, abs(am), abs(bm))


def pythagorean_unit(t: Fraction) -> tuple[Fraction, Fraction]:
    """Rational point (c, s) on the unit circle with c^2 + s^2 = 1 exactly.

    t = 0 gives (1, 0); t = 1 gives (0, 1); t = 1/2 gives (3/5, 4/5).
    """
    t = Fraction(t)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


@dataclass
class DeterministicRng:
    """Counter-based splittable generator: output depends only on (seed, counter).

    Advancing the counter is the only mutation; clones with disjoint counter
    ranges (`at`, `fork`) may be handed to parallel workers.
    """

    seed: int
    counter: int = 0

    def _mix(self, n: int) -> int:
        z = (self.seed + (n + 1) * _GAMMA) & _MASK64
        z ^= z >> 30
        z = (z * _MIX1) & _MASK64
        z ^= z >> 27
        z = (z * _MIX2) & _MASK64
        z ^= z >> 31
        return z

    def next_u64(self) -> int:
        v = self._mix(self.counter)
        self.counter += 1
        return v

    def next_int(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] (inclusive)."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def at(self, counter: int) -> "DeterministicRng":
        return DeterministicRng(self.seed, counter)

    def fork(self, tag: int) -> "DeterministicRng":
        """Independent stream derived from (seed, tag)."""
        return DeterministicRng(self._mix(tag ^ 0xD6E8FEB86659FD93), 0)


def random_rational(rng: DeterministicRng, bound: int) -> Fraction:
    """Random rational with |numerator|, denominator <= bound (so |r| <= bound)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    num = rng.next_int(-bound, bound)
    den = rng.next_int(1, bound)
    return Fraction(num, den)


def random_unit_rational_vector(rng: DeterministicRng, n: int) -> list[Fraction]:
    """Exact unit vector in Q^n built from a random Pythagorean rotation chain."""
    v = [Fraction(0)] * n
    v[rng.next_int(0, n - 1)] = Fraction(1)
    for _ in range(2 * n):
        i = rng.next_int(0, n - 1)
        j = rng.next_int(0, n - 1)
        if i == j:
            continue
        c, s = pythagorean_unit(random_rational(rng, 4))
        vi, vj = v[i], v[j]
        v[i], v[j] = c * vi - s * vj, s * vi + c * vj
    return v
