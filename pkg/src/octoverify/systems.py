"""The explicit OT-FKM operator families and their focal-point machinery.

Ambient space is R^32 (four octonion slots) or R^16 (four quaternion slots).
The FKM family acts by

    P_-1: (A, X, Y, B) -> (A, -X, Y, -B)
    P_a:  (A, X, Y, B) -> (-X e_a, -A conj(e_a), -B o conj(e_a), -Y o e_a)

for 0 <= a <= m1, with o a normalized orthogonal multiplication; the OT family
by P_0: (u, v, z, w) -> (u, -v, w, z) and
P_a: (u, v, z, w) -> (e_a v, -e_a u, e_a w, -e_a z).

Mirror points like x* = (0, e_0, -e_0, 0)/sqrt(2) carry the sqrt(2) as a
half-power-of-two tag on a rational representative (ScaledVec), so focal
checks, tangent frames, and the degree-4 expansion of F at such points all
stay in exact rational arithmetic (sqrt-2 parts live in Rt2Poly).

Sign conventions are explicit and recorded rather than implicit: normal
frames are declared per construction (n_i = P_i(x*) at mirror points,
n_i = -P_i(x) at the OT Condition-A point, which reproduces the standard
display of the second fundamental form there), and third-form comparisons
allow the documented global sign flip (X, Y, Z) -> (-X, -Y, -Z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import octonion as on
from .circ import Nom, Side, circ, right_ops
from .clifford import SymmetricCliffordSystem, find_intertwiner, volume_sign
from .linalg import identity, mat_mul, mat_vec, transpose
from .poly import MultiPoly, Rt2Poly, norm_sq_poly
from .report import Report
from .scalars import DeterministicRng, random_unit_rational_vector


@dataclass(frozen=True)
class AmbientSplit:
    """Four algebra blocks: ambient vector = (slot1, slot2, slot3, slot4)."""

    block_dim: int  # 4 (quaternion) or 8 (octonion)

    @property
    def ambient_dim(self) -> int:
        return 4 * self.block_dim

    def split(self, v: tuple) -> tuple:
        d = self.block_dim
        return tuple(tuple(v[i * d : (i + 1) * d]) for i in range(4))

    def join(self, a, b, c, d) -> tuple:
        return tuple(a) + tuple(b) + tuple(c) + tuple(d)


@dataclass(frozen=True)
class ScaledVec:
    """coords * 2^(half/2); |coords|^2 * 2^half stays rational for any half."""

    coords: tuple
    half: int = 0

    def norm_sq(self) -> Fraction:
        n2 = on.norm_sq(self.coords)
        return n2 * Fraction(2) ** self.half


def _op_matrix(f, n: int) -> list:
    cols = [f(tuple(Fraction(int(i == b)) for i in range(n))) for b in range(n)]
    return [[cols[b][r] for b in range(n)] for r in range(n)]


@dataclass
class FkmSystem:
    nom: Nom
    split: AmbientSplit
    system: SymmetricCliffordSystem  # indices -1..block_dim-1

    def apply(self, index: int, v: tuple) -> tuple:
        return tuple(mat_vec(self.system.operator(index), list(v)))


@dataclass
class OtSystem:
    split: AmbientSplit
    system: SymmetricCliffordSystem  # indices 0..block_dim-1

    def apply(self, index: int, v: tuple) -> tuple:
        return tuple(mat_vec(self.system.operator(index), list(v)))


def build_fkm_system(nom: Nom) -> FkmSystem:
    d = nom.dim
    sp = AmbientSplit(d)

    def p_minus1(v):
        A, X, Y, B = sp.split(v)
        return sp.join(A, on.neg(X), Y, on.neg(B))

    def p_a(a):
        ea = on.basis(a, d)
        cea = on.conjugate(ea)

        def f(v):
            A, X, Y, B = sp.split(v)
            return sp.join(
                on.neg(on.multiply(X, ea)),
                on.neg(on.multiply(A, cea)),
                on.neg(circ(nom, B, cea)),
                on.neg(circ(nom, Y, ea)),
            )

        return f

    ops = [_op_matrix(p_minus1, sp.ambient_dim)]
    ops += [_op_matrix(p_a(a), sp.ambient_dim) for a in range(d)]
    return FkmSystem(nom, sp, SymmetricCliffordSystem(ops, first_index=-1))


def build_ot_system(block_dim: int = 8) -> OtSystem:
    sp = AmbientSplit(block_dim)

    def p_0(v):
        u, vv, z, w = sp.split(v)
        return sp.join(u, on.neg(vv), w, z)

    def p_a(a):
        ea = on.basis(a, block_dim)

        def f(v):
            u, vv, z, w = sp.split(v)
            return sp.join(
                on.multiply(ea, vv),
                on.neg(on.multiply(ea, u)),
                on.multiply(ea, w),
                on.neg(on.multiply(ea, z)),
            )

        return f

    ops = [_op_matrix(p_0, sp.ambient_dim)]
    ops += [_op_matrix(p_a(a), sp.ambient_dim) for a in range(1, block_dim)]
    return OtSystem(sp, SymmetricCliffordSystem(ops, first_index=0))


def fkm_polynomial(system: SymmetricCliffordSystem) -> MultiPoly:
    """F(x) = <x,x>^2 - 2 sum_i <P_i x, x>^2, homogeneous of degree 4."""
    n = system.dim
    r2 = norm_sq_poly(n)
    f = r2 * r2
    for m in system.operators:
        q: dict = {}
        for r in range(n):
            row = m[r]
            for k in range(n):
                c = row[k]
                if c:
                    key = (1 << (5 * r)) + (1 << (5 * k))
                    q[key] = q.get(key, Fraction(0)) + c
        qp = MultiPoly(n, q)
        f = f - 2 * (qp * qp)
    return f


def focal_check(system: SymmetricCliffordSystem, x: ScaledVec) -> bool:
    """x lies on the focal zero locus: |x| = 1 and <P_i x, x> = 0 for all i."""
    if x.norm_sq() != 1:
        return False
    v = list(x.coords)
    return all(on.inner(tuple(mat_vec(m, v)), x.coords) == 0 for m in system.operators)


# ---------------------------------------------------------------------------
# focal frames
# ---------------------------------------------------------------------------


@dataclass
class FocalFrame:
    """Orthonormal (point | tangent | normal) frame with exact scaling tags.

    tangent order fixes the variable order of all extracted/assembled forms;
    normals are indexed by the system's operator indices.
    """

    point: ScaledVec
    tangent: list
    normals: list
    first_index: int
    labels: dict = field(default_factory=dict)


def frame_check(frame: FocalFrame, ambient_dim: int) -> Report:
    rep = Report("frame")
    vecs = [frame.point] + frame.tangent + frame.normals
    ok_unit = all(v.norm_sq() == 1 for v in vecs)
    rep.add("unit_vectors", ok_unit)
    ok_orth = True
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if on.inner(vecs[i].coords, vecs[j].coords) != 0:
                ok_orth = False
    rep.add("orthogonality", ok_orth)
    rep.add("dimension", len(vecs) == ambient_dim)
    return rep


def fkm_mirror_frame(fkm: FkmSystem) -> FocalFrame:
    """Frame at x* = (0, e_0, -e_0, 0)/sqrt2 with normals n_i = P_i(x*).

    Tangent order: X-type (0, e_alpha, 0, 0), Y-type (0, 0, e_mu, 0), then
    Z-type (e_p, 0, 0, e_p)/sqrt2, matching the symbolic (X, Y, Z) variable
    layout used by the closed-form routes.
    """
    d = fkm.split.block_dim
    sp = fkm.split
    zero = on.zero(d)
    xs = ScaledVec(sp.join(zero, on.basis(0, d), on.neg(on.basis(0, d)), zero), -1)
    tangent = [ScaledVec(sp.join(zero, on.basis(a, d), zero, zero), 0) for a in range(1, d)]
    tangent += [ScaledVec(sp.join(zero, zero, on.basis(m, d), zero), 0) for m in range(1, d)]
    tangent += [ScaledVec(sp.join(on.basis(p, d), zero, zero, on.basis(p, d)), -1) for p in range(d)]
    normals = [ScaledVec(fkm.apply(i, xs.coords), -1) for i in fkm.system.indices]
    return FocalFrame(xs, tangent, normals, first_index=-1, labels={"point": "x*"})


def ot_plus_frame(ot: OtSystem) -> FocalFrame:
    """Frame at the Condition-A point x = (0, 0, e_0, 0) with normals -P_i(x).

    The minus orientation makes the extracted second fundamental form match
    the standard display p_0 = |u|^2 - |v|^2, p_a = 2<e_a, u conj(v)>.
    """
    d = ot.split.block_dim
    sp = ot.split
    zero = on.zero(d)
    x0 = ScaledVec(sp.join(zero, zero, on.basis(0, d), zero), 0)
    tangent = [ScaledVec(sp.join(on.basis(a, d), zero, zero, zero), 0) for a in range(d)]
    tangent += [ScaledVec(sp.join(zero, on.basis(a, d), zero, zero), 0) for a in range(d)]
    tangent += [ScaledVec(sp.join(zero, zero, on.basis(p, d), zero), 0) for p in range(1, d)]
    normals = [ScaledVec(on.neg(ot.apply(i, x0.coords)), 0) for i in ot.system.indices]
    return FocalFrame(x0, tangent, normals, first_index=0, labels={"point": "x_plus"})


def fkm_perturbed_frame(fkm: FkmSystem, u_matrix: list) -> FocalFrame:
    """Frame at x*_n = (x# + n#)/sqrt2 where x# = (0, e_0, 0, 0),
    n# = (0, 0, n, 0), n = -U(e_0); tangent vectors are (Z, X, U(Y), U(Z))."""
    d = fkm.split.block_dim
    sp = fkm.split
    zero = on.zero(d)
    u_e0 = tuple(mat_vec(u_matrix, list(on.basis(0, d))))
    n = on.neg(u_e0)
    xs = ScaledVec(sp.join(zero, on.basis(0, d), n, zero), -1)
    tangent = [ScaledVec(sp.join(zero, on.basis(a, d), zero, zero), 0) for a in range(1, d)]
    tangent += [
        ScaledVec(sp.join(zero, zero, tuple(mat_vec(u_matrix, list(on.basis(m, d)))), zero), 0)
        for m in range(1, d)
    ]
    tangent += [
        ScaledVec(sp.join(on.basis(p, d), zero, zero, tuple(mat_vec(u_matrix, list(on.basis(p, d))))), -1)
        for p in range(d)
    ]
    normals = [ScaledVec(fkm.apply(i, xs.coords), -1) for i in fkm.system.indices]
    return FocalFrame(xs, tangent, normals, first_index=-1, labels={"point": "x*_n"})


# ---------------------------------------------------------------------------
# expansion extraction: second and third fundamental forms from F
# ---------------------------------------------------------------------------


@dataclass
class ExtractedForms:
    """p_i (quadratic) and q_i (cubic) forms in unit tangent coordinates,
    indexed like the system operators (first_index first)."""

    p: list  # list[Rt2Poly]
    q: list
    first_index: int
    nvars: int


def extract_expansion_forms(f: MultiPoly, frame: FocalFrame) -> ExtractedForms:
    """Read the second/third fundamental forms out of the degree-4 expansion

        F(t x + y + w) = t^4 + (2|y|^2 - 6|w|^2) t^2 + 8 (sum_a p_a w_a) t
                         + [ ... + 8 sum_a q_a w_a + ... ]

    at a focal point (value +1).  All frame vectors are rational-with-half-tag;
    per-monomial powers of sqrt2 are folded into Rt2Poly coefficients.
    """
    tcount = len(frame.tangent)
    ncount = len(frame.normals)
    nv_target = 1 + tcount + ncount
    ambient = f.nvars
    halves = [frame.point.half] + [v.half for v in frame.tangent] + [v.half for v in frame.normals]
    reps = [frame.point.coords] + [v.coords for v in frame.tangent] + [v.coords for v in frame.normals]

    forms = []
    for r in range(ambient):
        lf = MultiPoly(nv_target)
        for j in range(nv_target):
            c = reps[j][r]
            if c:
                lf = lf + c * MultiPoly.variable(nv_target, j)
        forms.append(lf)
    fc = f.substitute_linear(forms)

    from .poly import BITS, _EXP_MASK  # packing internals shared deliberately

    p_a: list[dict] = [dict() for _ in range(ncount)]
    p_b: list[dict] = [dict() for _ in range(ncount)]
    q_a: list[dict] = [dict() for _ in range(ncount)]
    q_b: list[dict] = [dict() for _ in range(ncount)]
    t4_coeff = Fraction(0)

    for key, cv in fc.terms.items():
        exps = []
        kk = key
        i = 0
        while kk:
            e = kk & _EXP_MASK
            if e:
                exps.append((i, e))
            kk >>= BITS
            i += 1
        tdeg = 0
        wslots = []
        tangent_part = 0
        kfold = 0
        tangent_deg = 0
        for idx, e in exps:
            kfold += halves[idx] * e
            if idx == 0:
                tdeg = e
            elif idx <= tcount:
                tangent_part += e << (BITS * (idx - 1))
                tangent_deg += e
            else:
                wslots.append((idx - 1 - tcount, e))
        if tdeg == 4 and not wslots and tangent_deg == 0:
            if kfold % 2 != 0:
                raise ValueError("t^4 coefficient carries sqrt2; frame is inconsistent")
            t4_coeff = cv * Fraction(2) ** (kfold // 2)
            continue
        if len(wslots) != 1 or wslots[0][1] != 1:
            continue
        widx = wslots[0][0]
        if tdeg == 1 and tangent_deg == 2:
            target_a, target_b = p_a[widx], p_b[widx]
        elif tdeg == 0 and tangent_deg == 3:
            target_a, target_b = q_a[widx], q_b[widx]
        else:
            continue
        c8 = cv / 8
        if kfold % 2 == 0:
            target_a[tangent_part] = target_a.get(tangent_part, Fraction(0)) + c8 * Fraction(2) ** (kfold // 2)
        else:
            target_b[tangent_part] = target_b.get(tangent_part, Fraction(0)) + c8 * Fraction(2) ** ((kfold - 1) // 2)

    if t4_coeff != 1:
        raise ValueError(f"expansion point is not on the +1 focal locus (t^4 coeff {t4_coeff})")
    ps = [Rt2Poly(MultiPoly(tcount, a), MultiPoly(tcount, b)) for a, b in zip(p_a, p_b)]
    qs = [Rt2Poly(MultiPoly(tcount, a), MultiPoly(tcount, b)) for a, b in zip(q_a, q_b)]
    return ExtractedForms(ps, qs, frame.first_index, tcount)


# ---------------------------------------------------------------------------
# second fundamental form, matrix route vs closed formula
# ---------------------------------------------------------------------------


def matrix_route_forms(system: SymmetricCliffordSystem, frame: FocalFrame) -> list:
    """Quadratics -<P_i v(c), v(c)> in unit tangent coordinates, as Rt2Poly."""
    tcount = len(frame.tangent)
    out = []
    for m in system.operators:
        pu = [tuple(mat_vec(m, list(v.coords))) for v in frame.tangent]
        terms_a: dict = {}
        terms_b: dict = {}
        for jdx in range(tcount):
            for kdx in range(jdx, tcount):
                val = on.inner(pu[jdx], frame.tangent[kdx].coords)
                if jdx != kdx:
                    val = val + on.inner(pu[kdx], frame.tangent[jdx].coords)
                if not val:
                    continue
                val = -val
                kfold = frame.tangent[jdx].half + frame.tangent[kdx].half
                key = (1 << (5 * jdx)) + (1 << (5 * kdx))
                if kfold % 2 == 0:
                    terms_a[key] = terms_a.get(key, Fraction(0)) + val * Fraction(2) ** (kfold // 2)
                else:
                    terms_b[key] = terms_b.get(key, Fraction(0)) + val * Fraction(2) ** ((kfold - 1) // 2)
        out.append(Rt2Poly(MultiPoly(tcount, terms_a), MultiPoly(tcount, terms_b)))
    return out


def symbolic_xyz(block_dim: int) -> tuple:
    """Symbolic tangent octonions: X, Y imaginary, Z full, over 3d-2 variables
    ordered (x_1.., y_1.., z_0..)."""
    nv = 3 * block_dim - 2
    zero = MultiPoly.zero(nv)
    xs = tuple([zero] + [MultiPoly.variable(nv, i) for i in range(block_dim - 1)])
    ys = tuple([zero] + [MultiPoly.variable(nv, block_dim - 1 + i) for i in range(block_dim - 1)])
    zs = tuple(MultiPoly.variable(nv, 2 * (block_dim - 1) + i) for i in range(block_dim))
    return xs, ys, zs, nv


def fkm_formula_forms(nom: Nom) -> list:
    """Closed mirror-point second-form formulas: p_-1 = |X|^2 - |Y|^2 and
    p_a = -sqrt2 <XZ + Y o Z, e_a>."""
    d = nom.dim
    xs, ys, zs, nv = symbolic_xyz(d)
    out = [Rt2Poly.rational(on.inner(xs, xs) - on.inner(ys, ys))]
    vec = on.add(on.multiply(xs, zs), circ(nom, ys, zs))
    for a in range(d):
        out.append(Rt2Poly.sqrt2_times(-vec[a]))
    return out


def second_form_at_focal(fkm: FkmSystem, frame: FocalFrame | None = None) -> Report:
    """Exact identity: -P_i restricted to the tangent space at x* equals the
    closed second-fundamental form (-sqrt2 (XZ + Y o Z), with |X|^2 - |Y|^2 on
    the P_-1 slot), as polynomials in unit tangent coordinates."""
    rep = Report("second_form_at_focal")
    frame = frame or fkm_mirror_frame(fkm)
    if not focal_check(fkm.system, frame.point):
        raise ValueError("frame point is not on the focal zero locus")
    fr = frame_check(frame, fkm.split.ambient_dim)
    rep.add("frame_orthonormal", fr.passed)
    got = matrix_route_forms(fkm.system, frame)
    want = fkm_formula_forms(fkm.nom)
    ok = all((g - w).is_zero() for g, w in zip(got, want))
    rep.add("matrix_equals_formula", ok)
    return rep


# ---------------------------------------------------------------------------
# Condition A
# ---------------------------------------------------------------------------


@dataclass
class SecondFormBlocks:
    """Blocks of the second-fundamental matrices in an eigenbasis: S_0 is
    diag(Id, -Id, 0) and S_a has A_a: V- -> V+, B_a: V0 -> V+, C_a: V0 -> V-."""

    a_blocks: list
    b_blocks: list
    c_blocks: list
    d_plus: int
    d_minus: int
    d_zero: int
    s_matrices: list  # full symmetric matrices incl. S_0, in tangent coords


def _hessian_half(p: MultiPoly, nv: int) -> list:
    s = [[Fraction(0)] * nv for _ in range(nv)]
    for exps, c in p.exponent_dict().items():
        nz = [(i, e) for i, e in enumerate(exps) if e]
        if sum(e for _, e in nz) != 2:
            raise ValueError("second-form polynomial is not quadratic")
        if len(nz) == 1:
            i = nz[0][0]
            s[i][i] = c
        else:
            (i, _), (j, _) = nz
            s[i][j] = s[i][j] + c / 2
            s[j][i] = s[j][i] + c / 2
    return s


def blocks_from_forms(p_forms: list, d_plus: int, d_minus: int, d_zero: int) -> SecondFormBlocks:
    """Split the quadratic forms p_0..p_m1 (rational parts) into the standard
    eigenbasis blocks.

    p_forms[0] must be the diagonal form |x_+|^2 - |x_-|^2.
    """
    nv = d_plus + d_minus + d_zero
    mats = []
    for f in p_forms:
        if isinstance(f, Rt2Poly):
            if not f.is_rational():
                raise ValueError("block extraction expects rational forms")
            f = f.a
        mats.append(_hessian_half(f, nv))
    s0_want = [[Fraction(0)] * nv for _ in range(nv)]
    for i in range(d_plus):
        s0_want[i][i] = Fraction(1)
    for i in range(d_plus, d_plus + d_minus):
        s0_want[i][i] = Fraction(-1)
    if mats[0] != s0_want:
        raise ValueError("p_0 is not the diagonal eigenvalue form diag(Id, -Id, 0)")
    ranges = (range(d_plus), range(d_plus, d_plus + d_minus), range(d_plus + d_minus, nv))
    for a, s in enumerate(mats[1:], start=1):
        for block in ranges:
            for i in block:
                for j in block:
                    if s[i][j] != 0:
                        raise ValueError(f"S_{a} has a nonzero within-eigenspace entry at {(i, j)}")
    a_blocks, b_blocks, c_blocks = [], [], []
    for s in mats[1:]:
        a_blocks.append([row[d_plus : d_plus + d_minus] for row in s[:d_plus]])
        b_blocks.append([row[d_plus + d_minus :] for row in s[:d_plus]])
        c_blocks.append([row[d_plus + d_minus :] for row in s[d_plus : d_plus + d_minus]])
    return SecondFormBlocks(a_blocks, b_blocks, c_blocks, d_plus, d_minus, d_zero, mats)


def condition_a_check(blocks: SecondFormBlocks, rng: DeterministicRng | None = None, normals: int = 20) -> Report:
    """Condition A: every B_a and C_a vanishes.  The report also verifies
    (S_n)^3 = S_n on random unit normals and, when A holds, the block
    relations A_a A_a^T = Id, A_a A_b^T + A_b A_a^T = 0, A_a^T A_b + A_b^T A_a = 0."""
    rep = Report("condition_a")
    zero_b = all(all(all(x == 0 for x in row) for row in m) for m in blocks.b_blocks)
    zero_c = all(all(all(x == 0 for x in row) for row in m) for m in blocks.c_blocks)
    rep.add("b_blocks_zero", zero_b)
    rep.add("c_blocks_zero", zero_c)
    rng = rng or DeterministicRng(99)
    nv = len(blocks.s_matrices[0])
    ok_cube = True
    for _ in range(normals):
        n = random_unit_rational_vector(rng, len(blocks.s_matrices))
        s = [[sum(n[a] * blocks.s_matrices[a][i][j] for a in range(len(n))) for j in range(nv)] for i in range(nv)]
        s3 = mat_mul(mat_mul(s, s), s)
        if s3 != s:
            ok_cube = False
    rep.add("shape_operator_cube", ok_cube, detail={"normals": normals})
    if zero_b and zero_c:
        ok9 = True
        m1 = len(blocks.a_blocks)
        for a in range(m1):
            aa = blocks.a_blocks[a]
            prod = mat_mul(aa, transpose(aa))
            if prod != identity(blocks.d_plus):
                ok9 = False
        for a in range(m1):
            for b in range(a + 1, m1):
                s1 = mat_mul(blocks.a_blocks[a], transpose(blocks.a_blocks[b]))
                s2 = mat_mul(blocks.a_blocks[b], transpose(blocks.a_blocks[a]))
                if [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(s1, s2)] != [
                    [Fraction(0)] * blocks.d_plus for _ in range(blocks.d_plus)
                ]:
                    ok9 = False
                t1 = mat_mul(transpose(blocks.a_blocks[a]), blocks.a_blocks[b])
                t2 = mat_mul(transpose(blocks.a_blocks[b]), blocks.a_blocks[a])
                if [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(t1, t2)] != [
                    [Fraction(0)] * blocks.d_minus for _ in range(blocks.d_minus)
                ]:
                    ok9 = False
        rep.add("a_block_relations", ok9)
    return rep


# ---------------------------------------------------------------------------
# Condition B
# ---------------------------------------------------------------------------


def condition_b_check(
    system: SymmetricCliffordSystem,
    frame: FocalFrame,
    p_forms: list,
    q_forms: list,
) -> Report:
    """Condition B via the standard recipe r_ab(v) = <P_a(v), n_b>.

    With the frame's uniformly oriented normals the recipe r is automatically
    skew; the identity q_b = sum_a r_ab p_a is checked for q and -q (the
    tangent-orientation freedom) and the matched sign recorded.  Fails when
    neither sign satisfies the identity.
    """
    rep = Report("condition_b")
    tcount = len(frame.tangent)
    nops = len(system.operators)
    orient = []
    for i, nvec in enumerate(frame.normals):
        pi_x = tuple(mat_vec(system.operators[i], list(frame.point.coords)))
        if nvec.coords == pi_x:
            orient.append(1)
        elif nvec.coords == on.neg(pi_x):
            orient.append(-1)
        else:
            orient.append(0)
    rep.note(f"normal orientation relative to P_i(x): {orient}")

    r: list = [[None] * nops for _ in range(nops)]
    for a in range(nops):
        pa_u = [tuple(mat_vec(system.operators[a], list(v.coords))) for v in frame.tangent]
        for b in range(nops):
            ta: dict = {}
            tb: dict = {}
            for j in range(tcount):
                val = on.inner(pa_u[j], frame.normals[b].coords)
                if not val:
                    continue
                kfold = frame.tangent[j].half + frame.normals[b].half
                key = 1 << (5 * j)
                if kfold % 2 == 0:
                    ta[key] = val * Fraction(2) ** (kfold // 2)
                else:
                    tb[key] = val * Fraction(2) ** ((kfold - 1) // 2)
            r[a][b] = Rt2Poly(MultiPoly(tcount, ta), MultiPoly(tcount, tb))

    skew = all((r[a][b] + r[b][a]).is_zero() for a in range(nops) for b in range(nops))
    rep.add("r_skew_symmetric", skew)

    sums = []
    for b in range(nops):
        acc = Rt2Poly.zero(tcount)
        for a in range(nops):
            acc = acc + r[a][b] * p_forms[a]
        sums.append(acc)
    plus_ok = all((s - q).is_zero() for s, q in zip(sums, q_forms))
    minus_ok = all((s + q).is_zero() for s, q in zip(sums, q_forms))
    sign = 1 if plus_ok else (-1 if minus_ok else 0)
    rep.add("linear_span_identity", plus_ok or minus_ok, detail={"matched_sign": sign})
    return rep


# ---------------------------------------------------------------------------
# perturbing the mirror point
# ---------------------------------------------------------------------------


def mirror_intertwiner(nom: Nom) -> tuple[list, int]:
    """Orthogonal U with U(z) o e_a = U(z e_a) (branch +1) or U(e_a z)
    (branch -1) for all a, z.

    For a left-shifted nom, U = Lmat(conj alpha) satisfies the first relation
    (a middle-Moufang consequence); for a right-shifted one, U = Rmat(conj
    alpha) satisfies the second.  The returned U is verified exactly; if the
    closed form ever failed, the generic intertwiner solve between the right
    o-operators and J'/J recovers one.
    """
    d = nom.dim
    ca = on.conjugate(nom.alpha)
    if nom.side is Side.LEFT:
        u = on.left_mult_matrix(ca)
        branch = 1
    else:
        u = on.right_mult_matrix(ca)
        branch = -1
    if _mirror_u_ok(nom, u, branch):
        return u, branch
    rro = right_ops(nom)
    jp = [on.right_mult_matrix(on.basis(i, d)) for i in range(1, d)]
    jj = [on.left_mult_matrix(on.basis(i, d)) for i in range(1, d)]
    res = find_intertwiner(jp, rro)
    if res.found and res.exact:
        return res.matrix, 1
    res = find_intertwiner(jj, rro)
    if res.found and res.exact:
        return res.matrix, -1
    raise ValueError("no exact mirror intertwiner found")


def _mirror_u_ok(nom: Nom, u: list, branch: int) -> bool:
    d = nom.dim
    if mat_mul(u, transpose(u)) != identity(d):
        return False
    for a in range(1, d):
        ea = on.basis(a, d)
        for b in range(d):
            z = on.basis(b, d)
            uz = tuple(mat_vec(u, list(z)))
            lhs = circ(nom, uz, ea)
            inner_prod = on.multiply(z, ea) if branch == 1 else on.multiply(ea, z)
            rhs = tuple(mat_vec(u, list(inner_prod)))
            if lhs != rhs:
                return False
    return True


def perturb_mirror(fkm: FkmSystem) -> Report:
    """Mirror-point perturbation: move the mirror point to x*_n where the
    second fundamental form becomes -sqrt2(XZ + YZ) or -sqrt2(XZ + ZY).

    The report records the branch: 'XZ+YZ' when U intertwines with right
    octonion multiplication (volume sign +1 of the right o-operators),
    'XZ+ZY' otherwise.
    """
    rep = Report("perturb_mirror")
    nom = fkm.nom
    d = nom.dim
    u, branch = mirror_intertwiner(nom)
    vol = volume_sign(right_ops(nom))
    rep.add("branch_matches_volume_sign", (branch == 1) == (vol == 1), detail={"volume_sign": vol})

    frame = fkm_perturbed_frame(fkm, u)
    rep.add("perturbed_point_focal", focal_check(fkm.system, frame.point))
    fr = frame_check(frame, fkm.split.ambient_dim)
    rep.add("frame_orthonormal", fr.passed)

    got = matrix_route_forms(fkm.system, frame)
    xs, ys, zs, nv = symbolic_xyz(d)
    if branch == 1:
        vec = on.add(on.multiply(xs, zs), on.multiply(ys, zs))
        label = "XZ+YZ"
    else:
        vec = on.add(on.multiply(xs, zs), on.multiply(zs, ys))
        label = "XZ+ZY"
    want = [Rt2Poly.rational(on.inner(xs, xs) - on.inner(ys, ys))]
    want += [Rt2Poly.sqrt2_times(-vec[a]) for a in range(d)]
    ok = all((g - w).is_zero() for g, w in zip(got, want))
    rep.add("second_form_branch_identity", ok, detail={"branch": label})
    return rep


# ---------------------------------------------------------------------------
# display checks for the OT construction at its Condition-A point
# ---------------------------------------------------------------------------


def ot_display_report(ot: OtSystem) -> tuple[Report, ExtractedForms, FocalFrame]:
    """Verify the standard displays at x = (0, 0, e_0, 0):

        p_0 = |u|^2 - |v|^2,    p_a = 2 <e_a, u conj(v)>,
        q_0 = 2 <z, u conj(v)>.

    The commonly displayed q_a (a >= 1) needs two corrections against the
    mechanical expansion: a global sign (tangent-orientation convention) and a
    conjugation placement; the exact identity is

        q_a = -[ <z,e_a>(|u|^2 - |v|^2 - 2<u, v>) - 2<z e_a, u conj v> ],

    with the coordinate dot <u, v>, which the report asserts.
    """
    rep = Report("ot_displays")
    d = ot.split.block_dim
    frame = ot_plus_frame(ot)
    fr = frame_check(frame, ot.split.ambient_dim)
    rep.add("frame_orthonormal", fr.passed)
    rep.add("point_focal", focal_check(ot.system, frame.point))
    f = fkm_polynomial(ot.system)
    forms = extract_expansion_forms(f, frame)

    nv = forms.nvars  # = 3d - 1: u_0.., v_0.., z_1..
    zero = MultiPoly.zero(nv)
    us = tuple(MultiPoly.variable(nv, i) for i in range(d))
    vs = tuple(MultiPoly.variable(nv, d + i) for i in range(d))
    zs = tuple([zero] + [MultiPoly.variable(nv, 2 * d + i) for i in range(d - 1)])

    p0_want = on.inner(us, us) - on.inner(vs, vs)
    rep.add("p0_display", forms.p[0] == Rt2Poly.rational(p0_want))
    ucv = on.multiply(us, on.conjugate(vs))
    ok_pa = all(
        forms.p[a] == Rt2Poly.rational(2 * ucv[a]) for a in range(1, d)
    )
    rep.add("pa_display", ok_pa)
    q0_want = 2 * on.inner(zs, ucv)
    rep.add("q0_display", forms.q[0] == Rt2Poly.rational(q0_want))
    uv_dot = on.inner(us, vs)
    ok_qa = True
    for a in range(1, d):
        za = on.multiply(zs, on.basis(a, d))
        disp = zs[a] * (on.inner(us, us) - on.inner(vs, vs) - 2 * uv_dot) - 2 * on.inner(za, ucv)
        if forms.q[a] != Rt2Poly.rational(-disp):
            ok_qa = False
    rep.add("qa_display_corrected", ok_qa, detail={"sign": -1, "inner_product": "<u,v>"})
    return rep, forms, frame
