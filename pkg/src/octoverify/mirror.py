"""Mirror points, the closed second/third fundamental forms at x*, and the
Ozeki-Takeuchi integrability identities.

Index bookkeeping: at the mirror point x* the form components are indexed
-1, 0..m1 (the -1 slot is the diagonal form |X|^2 - |Y|^2, and the original
index-0 third-form component vanishes, after which the remaining components
are renamed 0..m1).  TrilinearQ carries a ``reindexed`` flag so reports cannot
mix the two conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import octonion as on
from .circ import Nom, Side, circ
from .poly import BITS, MultiPoly, Rt2Poly
from .report import Report
from .scalars import EXACT, DeterministicRng, ScalarMode
from .systems import ScaledVec, symbolic_xyz


@dataclass(frozen=True)
class MirrorFrame:
    x: tuple
    n0: tuple
    x_sharp: tuple
    x_star: ScaledVec
    n0_star: ScaledVec


def mirror_points(x: tuple, n0: tuple) -> MirrorFrame:
    """x# = n0, x* = (x + n0)/sqrt2, n0* = (x - n0)/sqrt2 for unit x _|_ n0."""
    if on.norm_sq(x) != 1 or on.norm_sq(n0) != 1:
        raise ValueError("x and n0 must be unit vectors")
    if on.inner(x, n0) != 0:
        raise ValueError("x and n0 must be orthogonal")
    x_star = ScaledVec(on.add(x, n0), -1)
    n0_star = ScaledVec(on.sub(x, n0), -1)
    return MirrorFrame(tuple(x), tuple(n0), tuple(n0), x_star, n0_star)


# ---------------------------------------------------------------------------
# second-fundamental blocks at x* assembled from the blocks at x and x#
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfScaledMatrix:
    """rows * 2^(half/2), mirroring ScaledVec for matrices."""

    rows: tuple
    half: int = 0


def assemble_star_blocks(a_blocks: list, a_sharp_blocks: list) -> tuple[list, list]:
    """B*_a and C*_a, a = 1..m1+1: row b of B*_a is row a of -A_b/sqrt2
    (rows of A are 0-indexed here, so 'row a' means index a-1), and C* is the
    same stacking of the -A#_b/sqrt2."""
    m1 = len(a_blocks)
    n = m1 + 1
    for name, blocks in (("A", a_blocks), ("A#", a_sharp_blocks)):
        if len(blocks) != m1:
            raise ValueError(f"expected {m1} {name} blocks")
        for m in blocks:
            if len(m) != n or any(len(r) != n for r in m):
                raise ValueError(f"{name} blocks must be {n}x{n}")
    b_star, c_star = [], []
    for a in range(1, n + 1):
        b_rows = tuple(tuple(-x for x in a_blocks[b][a - 1]) for b in range(m1))
        c_rows = tuple(tuple(-x for x in a_sharp_blocks[b][a - 1]) for b in range(m1))
        b_star.append(HalfScaledMatrix(b_rows, -1))
        c_star.append(HalfScaledMatrix(c_rows, -1))
    return b_star, c_star


def star_blocks_identity_check(b_star: list, c_star: list) -> Report:
    """Gram identity the mirror blocks must satisfy:
    (B*_a)^T B*_b + (B*_b)^T B*_a = (C*_a)^T C*_b + (C*_b)^T C*_a."""
    rep = Report("star_blocks_gram")

    def gram(p: HalfScaledMatrix, q: HalfScaledMatrix):
        rows_p, rows_q = p.rows, q.rows
        n = len(rows_p[0])
        return [
            [sum(rows_p[r][i] * rows_q[r][j] for r in range(len(rows_p))) for j in range(n)]
            for i in range(n)
        ]

    ok = True
    for a in range(len(b_star)):
        for b in range(len(b_star)):
            lhs = gram(b_star[a], b_star[b])
            lhs2 = gram(b_star[b], b_star[a])
            rhs = gram(c_star[a], c_star[b])
            rhs2 = gram(c_star[b], c_star[a])
            l = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, lhs2)]
            r = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(rhs, rhs2)]
            if l != r:
                ok = False
    rep.add("bstar_cstar_gram_identity", ok)
    return rep


# ---------------------------------------------------------------------------
# closed forms at x*
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenDecomp:
    """Tangent decomposition W = X + Y + Z; X, Y purely imaginary."""

    x: tuple
    y: tuple
    z: tuple

    def __post_init__(self):
        if self.x[0] != 0 or self.y[0] != 0:
            raise ValueError("X and Y must be purely imaginary")
        if not (len(self.x) == len(self.y) == len(self.z)):
            raise ValueError("component dimension mismatch")


@dataclass(frozen=True)
class PStarValue:
    p_minus1: Fraction
    p_vec: ScaledVec  # actual vector = coords * sqrt2 (half = 1)


def p_star(nom: Nom, w: EigenDecomp) -> PStarValue:
    """p*_-1 = |X|^2 - |Y|^2 and p*_vec = -sqrt2 (XZ + Y o Z)."""
    vec = on.neg(on.add(on.multiply(w.x, w.z), circ(nom, w.y, w.z)))
    return PStarValue(on.norm_sq(w.x) - on.norm_sq(w.y), ScaledVec(vec, 1))


def q_star_fkm_eval(nom: Nom, x: tuple, y: tuple, z: tuple) -> tuple:
    """q*(X,Y,Z) = X(Y o Z) - Y o (XZ) on full octonion slots (the extension
    q*(e_0,.,.) = q*(.,e_0,.) = 0 holds automatically for this form)."""
    return on.sub(on.multiply(x, circ(nom, y, z)), circ(nom, y, on.multiply(x, z)))


def q_star_fkm(nom: Nom, w: EigenDecomp) -> tuple:
    """q*(W,W,W) = X(Y o Z) - Y o (XZ)."""
    return q_star_fkm_eval(nom, w.x, w.y, w.z)


def q_star_ot_eval(x: tuple, y: tuple, z: tuple) -> tuple:
    """q*(X,Y,Z) = (XY - YX) Z on full octonion slots."""
    comm = on.sub(on.multiply(x, y), on.multiply(y, x))
    return on.multiply(comm, z)


def q_star_ot(w: EigenDecomp) -> tuple:
    """q*(W,W,W) = (XY - YX) Z."""
    return q_star_ot_eval(w.x, w.y, w.z)


# ---------------------------------------------------------------------------
# A# from q_0 (mirror determination)
# ---------------------------------------------------------------------------


def sharp_from_q0(q0: MultiPoly, m1: int) -> list:
    """A#_a entries from the cubic q_0 at a Condition-A point:
    A#_a[alpha][mu] = coeff(x_alpha y_mu z_a) / 2.

    Variable layout of q0: x_0..x_{m2-1}, y_0..y_{m2-1}, z_1..z_{m1} with
    m2 = m1 + 1.  Any monomial outside the x*y*z shape is an error.
    """
    m2 = m1 + 1
    nv = 2 * m2 + m1
    if q0.nvars != nv:
        raise ValueError(f"expected q0 over {nv} variables (x, y, z layout)")
    blocks = [[[Fraction(0)] * m2 for _ in range(m2)] for _ in range(m1)]
    for exps, c in q0.exponent_dict().items():
        nz = [(i, e) for i, e in enumerate(exps) if e]
        if sorted(e for _, e in nz) != [1, 1, 1]:
            raise ValueError(f"monomial {exps} is not trilinear x*y*z")
        idx = sorted(i for i, _ in nz)
        if not (idx[0] < m2 <= idx[1] < 2 * m2 <= idx[2]):
            raise ValueError(f"monomial {exps} is outside the x*y*z shape")
        alpha, mu, a = idx[0], idx[1] - m2, idx[2] - 2 * m2 + 1
        blocks[a - 1][alpha][mu] = c / 2
    return blocks


# ---------------------------------------------------------------------------
# trilinear tensor of the third fundamental form
# ---------------------------------------------------------------------------


@dataclass
class TrilinearQ:
    """Coefficients q_a^{alpha mu p} of <q*(X, Y, Z), e_a>; indices follow the
    renamed convention a, p in 0..m1, alpha, mu in 1..m1 (reindexed=True means
    the vanished original index-0 component has been dropped)."""

    m1: int
    coeffs: dict  # (a, alpha, mu, p) -> Fraction
    reindexed: bool = True

    def value(self, a: int, alpha: int, mu: int, p: int) -> Fraction:
        return self.coeffs.get((a, alpha, mu, p), Fraction(0))

    def contract(self, x: tuple, y: tuple, z: tuple) -> tuple:
        d = self.m1 + 1
        out = [Fraction(0)] * d
        for (a, alpha, mu, p), c in self.coeffs.items():
            v = c * x[alpha] * y[mu] * z[p]
            out[a] += v
        return tuple(out)

    def component_polys(self, nvars: int | None = None) -> list:
        """Components as MultiPolys over the (x_1.., y_1.., z_0..) layout."""
        m1 = self.m1
        nv = nvars or (3 * m1 + 1)
        polys = []
        for a in range(m1 + 1):
            terms: dict = {}
            for (aa, alpha, mu, p), c in self.coeffs.items():
                if aa != a:
                    continue
                key = (1 << (BITS * (alpha - 1))) + (1 << (BITS * (m1 + mu - 1))) + (1 << (BITS * (2 * m1 + p)))
                terms[key] = terms.get(key, Fraction(0)) + c
            polys.append(MultiPoly(nv, terms))
        return polys

    def mutated(self, key: tuple, value: Fraction) -> "TrilinearQ":
        coeffs = dict(self.coeffs)
        if value == 0:
            coeffs.pop(key, None)
        else:
            coeffs[key] = value
        return TrilinearQ(self.m1, coeffs, self.reindexed)

    def to_quintuples(self) -> list:
        """Sparse (a, alpha, mu, p, coeff) rows in sorted index order."""
        return [(a, al, mu, p, c) for (a, al, mu, p), c in sorted(self.coeffs.items())]

    @staticmethod
    def from_quintuples(m1: int, rows: list, reindexed: bool = True) -> "TrilinearQ":
        return TrilinearQ(m1, {(a, al, mu, p): Fraction(c) for a, al, mu, p, c in rows}, reindexed)

    @staticmethod
    def from_closed_form(q_eval, dim: int) -> "TrilinearQ":
        """Tensor of a trilinear map (X, Y, Z) -> algebra element by spanning
        over basis triples."""
        m1 = dim - 1
        coeffs: dict = {}
        for alpha in range(1, dim):
            ea = on.basis(alpha, dim)
            for mu in range(1, dim):
                em = on.basis(mu, dim)
                for p in range(dim):
                    val = q_eval(ea, em, on.basis(p, dim))
                    for a in range(dim):
                        if val[a]:
                            coeffs[(a, alpha, mu, p)] = val[a]
        return TrilinearQ(m1, coeffs)


def trilinearity_extract(q_forms: list, ranges: tuple[int, int, int], p_minus1: MultiPoly | None = None) -> TrilinearQ:
    """Build the TrilinearQ tensor from extracted third-form components.

    q_forms is indexed -1, 0..m1 (extraction order); ranges = (d_x, d_y, d_z)
    declares the three tangent variable ranges.  Checks, in order: the
    original index--1 component vanishes; every monomial of the remaining
    components has degree exactly 1 in each range (error names the first
    violating monomial); and <grad p_-1, grad q_a> = 0 for all a.
    """
    dx, dy, dz = ranges
    nv = dx + dy + dz
    comps = []
    for f in q_forms:
        if isinstance(f, Rt2Poly):
            if not f.is_rational():
                raise ValueError("third-form components must be rational after scaling")
            f = f.a
        comps.append(f)
    # trilinearity first: the shape failure is the informative error
    for a, f in enumerate(comps):
        for exps, c in f.exponent_dict().items():
            d1 = sum(exps[:dx])
            d2 = sum(exps[dx : dx + dy])
            d3 = sum(exps[dx + dy :])
            if (d1, d2, d3) != (1, 1, 1):
                raise ValueError(f"non-trilinear monomial {exps} in component {a}")
    if not comps[0].is_zero():
        raise ValueError("original index-0 third-form component does not vanish")
    m1 = len(comps) - 2
    coeffs: dict = {}
    for a, f in enumerate(comps[1:]):
        for exps, c in f.exponent_dict().items():
            alpha = next(i for i in range(dx) if exps[i]) + 1
            mu = next(i for i in range(dy) if exps[dx + i]) + 1
            p = next(i for i in range(dz) if exps[dx + dy + i])
            coeffs[(a, alpha, mu, p)] = c
    if p_minus1 is None:
        terms: dict = {}
        for i in range(dx):
            terms[2 << (BITS * i)] = Fraction(1)
        for i in range(dy):
            terms[2 << (BITS * (dx + i))] = Fraction(-1)
        p_minus1 = MultiPoly(nv, terms)
    gp = p_minus1.gradient()
    for a, f in enumerate(comps[1:]):
        gq = f.gradient()
        acc = MultiPoly(nv)
        for u, v in zip(gp, gq):
            acc = acc + u * v
        if not acc.is_zero():
            raise ValueError(f"<grad p_-1, grad q_{a}> != 0")
    return TrilinearQ(m1, coeffs, reindexed=True)


# ---------------------------------------------------------------------------
# the displayed Ozeki-Takeuchi equations
# ---------------------------------------------------------------------------


def verify_ot_equations(
    p_minus1: MultiPoly,
    p_vec: list,
    q: TrilinearQ,
    mode: ScalarMode = EXACT,
    rng: DeterministicRng | None = None,
    trials: int = 20,
) -> Report:
    """Three named exact checks over the tangent coordinates:

      norm_identity:   16|q*|^2 = 16 G (|X|^2+|Y|^2+|Z|^2) - |grad G|^2,
                       G = p_-1^2 + sum_a (p*_a)^2 with p*_a = -sqrt2 p_vec[a]
      gradient_pairs:  <grad p*_i, grad q*_j> + <grad p*_j, grad q*_i> = 0
                       for all -1 <= i != j <= m1 (q*_-1 = 0)
      p_dot_q:         <p*, q*> = 0

    p_vec holds the rational parts of the a-indexed second-form components
    (their true values carry a common -sqrt2, which squares away in G and
    factors out of the other two identities).
    """
    rep = Report("ot_equations")
    m1 = q.m1
    nv = p_minus1.nvars
    qpolys = q.component_polys(nv)

    g = p_minus1 * p_minus1
    for f in p_vec:
        g = g + 2 * (f * f)
    q2 = MultiPoly(nv)
    for f in qpolys:
        q2 = q2 + f * f
    r2 = MultiPoly(nv)
    for i in range(nv):
        v = MultiPoly.variable(nv, i)
        r2 = r2 + v * v
    gg = MultiPoly(nv)
    for d in g.gradient():
        gg = gg + d * d
    diff = 16 * q2 - (16 * (g * r2) - gg)
    if mode.is_exact:
        rep.add("third_form_norm_identity", diff.is_zero(), detail={"residual_terms": len(diff.terms)})
    else:
        rng = rng or DeterministicRng(0)
        from .poly import poly_equal_random

        rep.add("third_form_norm_identity", poly_equal_random(diff, MultiPoly(nv), trials, rng))

    def dot(gs1, gs2):
        acc = MultiPoly(nv)
        for u, v in zip(gs1, gs2):
            acc = acc + u * v
        return acc

    gpm1 = p_minus1.gradient()
    gpa = [f.gradient() for f in p_vec]
    gqa = [f.gradient() for f in qpolys]
    ok_pairs = True
    # (i, j) = (-1, a): q_-1 = 0, so only <grad p_-1, grad q_a> remains; the
    # -sqrt2 on p_a multiplies the vanished term and drops out.
    for a in range(m1 + 1):
        if not dot(gpm1, gqa[a]).is_zero():
            ok_pairs = False
    # (i, j) = (a, b), a != b >= 0: both terms share the -sqrt2 factor.
    for a in range(m1 + 1):
        for b in range(a + 1, m1 + 1):
            if not (dot(gpa[a], gqa[b]) + dot(gpa[b], gqa[a])).is_zero():
                ok_pairs = False
    rep.add("gradient_pair_identity", ok_pairs)

    pq = MultiPoly(nv)
    for f, qf in zip(p_vec, qpolys):
        pq = pq + f * qf
    rep.add("p_dot_q", pq.is_zero())
    return rep


def fkm_pq_tangent_forms(nom: Nom) -> tuple[MultiPoly, list, TrilinearQ]:
    """Symbolic (p_-1, p_vec rational parts, q tensor) for the FKM closed
    forms at x*, over the standard (x, y, z) tangent layout."""
    d = nom.dim
    xs, ys, zs, nv = symbolic_xyz(d)
    p_minus1 = on.inner(xs, xs) - on.inner(ys, ys)
    vec = on.add(on.multiply(xs, zs), circ(nom, ys, zs))
    p_vec = [vec[a] for a in range(d)]
    qt = TrilinearQ.from_closed_form(lambda X, Y, Z: q_star_fkm_eval(nom, X, Y, Z), d)
    return p_minus1, p_vec, qt


def ot_pq_tangent_forms(dim: int = 8) -> tuple[MultiPoly, list, TrilinearQ]:
    """Same for the OT closed form q* = (XY - YX) Z (o = octonion product)."""
    nom = Nom(Side.LEFT, on.basis(0, dim))
    xs, ys, zs, nv = symbolic_xyz(dim)
    p_minus1 = on.inner(xs, xs) - on.inner(ys, ys)
    vec = on.add(on.multiply(xs, zs), on.multiply(ys, zs))
    p_vec = [vec[a] for a in range(dim)]
    qt = TrilinearQ.from_closed_form(q_star_ot_eval, dim)
    return p_minus1, p_vec, qt
