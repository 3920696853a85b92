"""Normalized orthogonal multiplications x o y on H and O.

Every normalized orthogonal multiplication on the octonions is one of

    left-shifted:  x o y = (x (y conj(alpha))) alpha
    right-shifted: x o y = alpha ((conj(alpha) y) x)

for a unit alpha = cos(theta) e_0 + sin(theta) e.  The angle endpoints map to
(left, e_0) <-> x o y = xy and (right, e_0) <-> x o y = yx; substituting
alpha = -e_0 into the left form still gives xy, so "theta = 0 or pi" is
encoded by the side tag, not by the sign of alpha.

Pythagorean alpha (built from a rational t) keeps every o-product rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import octonion as on
from .report import Report
from .scalars import EXACT, DeterministicRng, ScalarMode, pythagorean_unit, random_rational, rational_sqrt


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class NormalizedOrthogonalMultiplication:
    """Side tag plus unit alpha.  The bare constructor does not validate (tests
    use it to build deliberately broken instances); go through make_nom/from_t."""

    side: Side
    alpha: tuple

    @property
    def dim(self) -> int:
        return len(self.alpha)


Nom = NormalizedOrthogonalMultiplication


def make_nom(side: Side, alpha) -> Nom:
    alpha = tuple(Fraction(c) if isinstance(c, int) else c for c in alpha)
    if on.norm_sq(alpha) != 1:
        raise ValueError("alpha must be a unit vector")
    if len(alpha) not in (4, 8):
        raise ValueError("alpha must live in H or O")
    return Nom(side, alpha)


def nom_from_t(side: Side, t: Fraction, axis: int = 4, dim: int = 8) -> Nom:
    """Nom with alpha = c e_0 + s e_axis for the Pythagorean point of t."""
    c, s = pythagorean_unit(Fraction(t))
    alpha = list(on.zero(dim))
    alpha[0] = c
    if s:
        if not 1 <= axis < dim:
            raise ValueError("axis must be an imaginary basis index")
        alpha[axis] = s
    return make_nom(side, tuple(alpha))


def circ(nom: Nom, x, y):
    """x o y; works over any coefficient ring in the coordinates of x, y."""
    a = nom.alpha
    if nom.side is Side.LEFT:
        return on.multiply(on.multiply(x, on.multiply(y, on.conjugate(a))), a)
    return on.multiply(a, on.multiply(on.multiply(on.conjugate(a), y), x))


def left_ops(nom: Nom) -> list:
    """U_a(x) = e_a o x for a = 1..dim-1, as matrices."""
    dim = nom.dim
    out = []
    for a in range(1, dim):
        cols = [circ(nom, on.basis(a, dim), on.basis(b, dim)) for b in range(dim)]
        out.append([[cols[b][r] for b in range(dim)] for r in range(dim)])
    return out


def right_ops(nom: Nom) -> list:
    """R_a(x) = x o e_a for a = 1..dim-1, as matrices."""
    dim = nom.dim
    out = []
    for a in range(1, dim):
        cols = [circ(nom, on.basis(b, dim), on.basis(a, dim)) for b in range(dim)]
        out.append([[cols[b][r] for b in range(dim)] for r in range(dim)])
    return out


@dataclass(frozen=True)
class ThetaAxis:
    c: Fraction
    s: Fraction
    axis: tuple
    degenerate: bool  # s == 0: axis is the canonical default e_1


def theta_axis(alpha) -> ThetaAxis:
    """Split unit alpha into cos, sin, and the imaginary unit axis."""
    if on.norm_sq(alpha) != 1:
        raise ValueError("alpha must be a unit vector")
    dim = len(alpha)
    c = alpha[0]
    im = on.imaginary_part(alpha)
    s2 = on.norm_sq(im)
    if s2 == 0:
        return ThetaAxis(Fraction(c), Fraction(0), on.basis(1, dim), True)
    s = rational_sqrt(Fraction(s2))
    if s is None:
        raise ValueError("imaginary part has irrational norm; use a Pythagorean alpha in exact mode")
    axis = tuple(x / s for x in im)
    return ThetaAxis(Fraction(c), s, axis, False)


def cos_sin_2theta(nom: Nom) -> tuple[Fraction, Fraction]:
    ta = theta_axis(nom.alpha)
    return ta.c * ta.c - ta.s * ta.s, 2 * ta.s * ta.c


def verify_normalized(nom: Nom, mode: ScalarMode = EXACT, rng: DeterministicRng | None = None, samples: int = 200) -> Report:
    """Norm multiplicativity on basis and random pairs, e_0 o x = x, and the
    skew Clifford relations of the left operators U_a."""
    from .clifford import verify_skew_rep

    rep = Report("normalized_orthogonal_multiplication")
    dim = nom.dim
    rng = rng or DeterministicRng(2024)
    ok_norm = True
    for i in range(dim):
        for j in range(dim):
            p = circ(nom, on.basis(i, dim), on.basis(j, dim))
            if on.norm_sq(p) != 1:
                ok_norm = False
    for _ in range(samples):
        x = tuple(random_rational(rng, 6) for _ in range(dim))
        y = tuple(random_rational(rng, 6) for _ in range(dim))
        if on.norm_sq(circ(nom, x, y)) != on.norm_sq(x) * on.norm_sq(y):
            ok_norm = False
    rep.add("norm_multiplicativity", ok_norm)
    ok_unit = all(circ(nom, on.basis(0, dim), on.basis(b, dim)) == on.basis(b, dim) for b in range(dim))
    rep.add("e0_left_identity", ok_unit)
    sk = verify_skew_rep(left_ops(nom), mode)
    rep.add("left_ops_skew_clifford", sk.passed, sk.max_residual())
    return rep


@dataclass
class CircTable:
    """(m+1)x(m+1) table of e_a o e_b values with its bilinear extension."""

    entries: list  # entries[a][b] = coordinate tuple of e_a o e_b

    @property
    def dim(self) -> int:
        return len(self.entries)

    def mul(self, x, y):
        out = None
        for a in range(self.dim):
            for b in range(self.dim):
                term = on.scale(x[a] * y[b], self.entries[a][b])
                out = term if out is None else on.add(out, term)
        return out

    def as_signed_pairs(self) -> list | None:
        """(sign, index) form when every entry is a signed basis vector, else None."""
        out = []
        for row in self.entries:
            orow = []
            for v in row:
                nz = [(k, c) for k, c in enumerate(v) if c != 0]
                if len(nz) != 1 or abs(nz[0][1]) != 1:
                    return None
                orow.append((1 if nz[0][1] > 0 else -1, nz[0][0]))
            out.append(orow)
        return out

    def as_dense(self) -> list:
        return [[list(v) for v in row] for row in self.entries]


def nom_table(nom: Nom) -> CircTable:
    dim = nom.dim
    return CircTable([[circ(nom, on.basis(a, dim), on.basis(b, dim)) for b in range(dim)] for a in range(dim)])


def nom_from_sharp_blocks(sharp: list) -> CircTable:
    """Rebuild the multiplication table from mirror-point blocks A#_a.

    Preconditions (each checked, error names the first failure): A#_a is
    skew-symmetric orthogonal, the family pairwise Clifford-anticommutes, and
    A#_a(e_0) = e_a.
    """
    from .clifford import verify_skew_rep

    m = len(sharp)
    dim = m + 1
    for a, mat in enumerate(sharp, start=1):
        if len(mat) != dim or any(len(r) != dim for r in mat):
            raise ValueError(f"A#_{a} has wrong size (expected {dim}x{dim})")
        if mat != [[-mat[j][i] for j in range(dim)] for i in range(dim)]:
            raise ValueError(f"A#_{a} is not skew-symmetric")
    sk = verify_skew_rep(sharp, EXACT)
    if not sk.passed:
        raise ValueError(f"A# blocks fail skew Clifford relations: {sk.failing()}")
    for a, mat in enumerate(sharp, start=1):
        if mat_col(mat, 0) != list(on.basis(a, dim)):
            raise ValueError(f"A#_{a}(e_0) != e_{a}")
    entries = [[on.basis(b, dim) for b in range(dim)]]
    for a in range(1, dim):
        entries.append([tuple(mat_col(sharp[a - 1], b)) for b in range(dim)])
    return CircTable(entries)


def mat_col(mat: list, b: int) -> list:
    return [mat[r][b] for r in range(len(mat))]


def comparison_check(nom: Nom, a, b) -> Report:
    """Angle-comparison identity for a left-shifted nom on orthonormal
    imaginary a, b: if ab is parallel to the axis, a o b = ab; if a, b, ab are
    all perpendicular to the axis, a o b = cos(2 theta) ab + sin(2 theta)(ab)e.
    Configurations matching neither branch are an error."""
    rep = Report("comparison_identity")
    if nom.side is not Side.LEFT:
        raise ValueError("comparison formula applies to left-shifted noms")
    dim = nom.dim
    if a[0] != 0 or b[0] != 0 or on.norm_sq(a) != 1 or on.norm_sq(b) != 1 or on.inner(a, b) != 0:
        raise ValueError("a, b must be orthonormal purely imaginary")
    ta = theta_axis(nom.alpha)
    ab = on.multiply(a, b)
    got = circ(nom, a, b)
    c2, s2 = cos_sin_2theta(nom)
    axis = ta.axis
    parallel = on.sub(ab, on.scale(on.inner(ab, axis), axis)) == on.zero(dim)
    perp = (
        on.inner(a, axis) == 0
        and on.inner(b, axis) == 0
        and on.inner(ab, axis) == 0
    )
    if ta.degenerate or perp:
        want = on.add(on.scale(c2, ab), on.scale(s2, on.multiply(ab, axis)))
        diff = on.sub(got, want)
        rep.add("perpendicular_branch", diff == on.zero(dim), max(abs(x) for x in diff))
        return rep
    if parallel:
        diff = on.sub(got, ab)
        rep.add("parallel_branch_ab", diff == on.zero(dim), max(abs(x) for x in diff))
        return rep
    raise ValueError("configuration not covered by either comparison branch")
