"""Quaternion and octonion arithmetic via the Cayley-Dickson doubling.

The octonion product is the Cayley-Dickson extension of the quaternions:

    (a, b)(c, d) = (ac - conj(d) b,  da + b conj(c))

with the basis fixed as (e_0,...,e_7) = (1, i, j, k, eps, i eps, j eps, k eps),
so the quaternions are the sub-span of coordinates 0..3.  All structure
constants are 0 or +-1; they are cached once in a signed 8x8 table and the
general product is the table-driven bilinear extension, which works over any
commutative coefficient ring (Fraction, float, or polynomial coordinates).

``cayley_dickson_multiply`` keeps the recursive definition around as an
independent oracle for the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Coord = Sequence


def _quaternion_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def _quaternion_conj(a):
    return (a[0], -a[1], -a[2], -a[3])


def cayley_dickson_multiply(x, y):
    """Octonion product straight from the doubling rule (reference oracle)."""
    a, b = tuple(x[:4]), tuple(x[4:])
    c, d = tuple(y[:4]), tuple(y[4:])
    z1 = tuple(p - q for p, q in zip(_quaternion_mul(a, c), _quaternion_mul(_quaternion_conj(d), b)))
    z2 = tuple(p + q for p, q in zip(_quaternion_mul(d, a), _quaternion_mul(b, _quaternion_conj(c))))
    return z1 + z2


def _build_tables():
    sign = [[0] * 8 for _ in range(8)]
    index = [[0] * 8 for _ in range(8)]
    for i in range(8):
        ei = tuple(Fraction(int(i == t)) for t in range(8))
        for j in range(8):
            ej = tuple(Fraction(int(j == t)) for t in range(8))
            p = cayley_dickson_multiply(ei, ej)
            nz = [(k, c) for k, c in enumerate(p) if c != 0]
            assert len(nz) == 1 and abs(nz[0][1]) == 1
            index[i][j] = nz[0][0]
            sign[i][j] = 1 if nz[0][1] > 0 else -1
    return sign, index


MULT_SIGN, MULT_INDEX = _build_tables()


def basis(i: int, dim: int = 8) -> tuple:
    return tuple(Fraction(int(j == i)) for j in range(dim))


def zero(dim: int = 8) -> tuple:
    return tuple(Fraction(0) for _ in range(dim))


def multiply(x, y):
    """Table-driven bilinear product; dim-4 inputs stay in the quaternion sub-span."""
    dim = len(x)
    if len(y) != dim:
        raise ValueError("dimension mismatch")
    out = [None] * dim
    for i in range(dim):
        xi = x[i]
        row_s = MULT_SIGN[i]
        row_k = MULT_INDEX[i]
        for j in range(dim):
            term = xi * y[j]
            if row_s[j] < 0:
                term = -term
            k = row_k[j]
            out[k] = term if out[k] is None else out[k] + term
    return tuple(out)


def conjugate(x):
    return (x[0],) + tuple(-c for c in x[1:])


def imaginary_part(x):
    zero_like = x[0] - x[0]
    return (zero_like,) + tuple(x[1:])


def inner(x, y):
    """Coordinate dot product; equals (x conj(y) + y conj(x))/2 for octonions."""
    acc = None
    for a, b in zip(x, y):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def norm_sq(x):
    return inner(x, x)


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def neg(x):
    return tuple(-a for a in x)


def scale(s, x):
    return tuple(s * a for a in x)


def left_mult_matrix(u) -> list:
    """Matrix of z -> u z on coordinate columns (column b = coords of u e_b)."""
    dim = len(u)
    cols = [multiply(u, basis(b, dim)) for b in range(dim)]
    return [[cols[b][r] for b in range(dim)] for r in range(dim)]


def right_mult_matrix(u) -> list:
    """Matrix of z -> z u."""
    dim = len(u)
    cols = [multiply(basis(b, dim), u) for b in range(dim)]
    return [[cols[b][r] for b in range(dim)] for r in range(dim)]


@dataclass(frozen=True)
class Octonion:
    """Octonion as an 8-coordinate vector against (1, i, j, k, eps, i eps, j eps, k eps).

    Purely imaginary elements are Octonions with zero e_0 coordinate; the
    quaternions are the elements supported on coordinates 0..3.
    """

    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 8:
            raise ValueError("octonion needs 8 coordinates")

    @staticmethod
    def from_coords(cs) -> "Octonion":
        return Octonion(tuple(Fraction(c) if isinstance(c, int) else c for c in cs))

    @staticmethod
    def basis(i: int) -> "Octonion":
        return Octonion(basis(i))

    @staticmethod
    def zero() -> "Octonion":
        return Octonion(zero())

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(add(self.coords, other.coords))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(sub(self.coords, other.coords))

    def __neg__(self) -> "Octonion":
        return Octonion(neg(self.coords))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return Octonion(multiply(self.coords, other.coords))
        return Octonion(scale(other, self.coords))

    def __rmul__(self, other):
        return Octonion(scale(other, self.coords))

    def conjugate(self) -> "Octonion":
        return Octonion(conjugate(self.coords))

    def inner(self, other: "Octonion"):
        return inner(self.coords, other.coords)

    def norm_sq(self):
        return norm_sq(self.coords)

    def imaginary(self) -> "Octonion":
        return Octonion(imaginary_part(self.coords))

    def is_imaginary(self) -> bool:
        return self.coords[0] == 0

    def left_mult_matrix(self) -> list:
        return left_mult_matrix(self.coords)

    def right_mult_matrix(self) -> list:
        return right_mult_matrix(self.coords)

    def __repr__(self) -> str:
        parts = [f"{c}*e{i}" for i, c in enumerate(self.coords) if c != 0]
        return " + ".join(parts) if parts else "0"


def j_generators(dim: int = 8) -> list:
    """Left-multiplication generators J_i(z) = e_i z, i = 1..dim-1."""
    return [left_mult_matrix(basis(i, dim)) for i in range(1, dim)]


def j_prime_generators(dim: int = 8) -> list:
    """Right-multiplication generators J'_i(z) = z e_i."""
    return [right_mult_matrix(basis(i, dim)) for i in range(1, dim)]
