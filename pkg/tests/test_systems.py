from fractions import Fraction

import pytest

from octoverify import octonion as on
from octoverify.circ import Side, nom_from_t
from octoverify.clifford import verify_symmetric_system
from octoverify.poly import Rt2Poly, munzner_verify
from octoverify.scalars import DeterministicRng
from octoverify.systems import (
    ScaledVec,
    blocks_from_forms,
    build_fkm_system,
    condition_a_check,
    condition_b_check,
    extract_expansion_forms,
    fkm_formula_forms,
    fkm_mirror_frame,
    fkm_polynomial,
    focal_check,
    frame_check,
    matrix_route_forms,
    mirror_intertwiner,
    ot_display_report,
    ot_plus_frame,
    perturb_mirror,
    second_form_at_focal,
)

E = [on.basis(i) for i in range(8)]


def test_fkm_systems_pass(fkm_systems):
    for key, fkm in fkm_systems.items():
        assert verify_symmetric_system(fkm.system).passed, key
        assert fkm.system.indices[0] == -1
    # P_-1 is symmetric diagonal +-1 with square Id
    p = fkm_systems[("left", Fraction(0))].system.operator(-1)
    assert all(p[i][j] == (0 if i != j else p[i][i]) for i in range(32) for j in range(32))
    assert all(p[i][i] in (1, -1) for i in range(32))


def test_fkm_quaternion_system(fkm_quaternion):
    assert fkm_quaternion.split.ambient_dim == 16
    assert verify_symmetric_system(fkm_quaternion.system).passed


def test_fkm_systems_ten_pythagorean_alphas():
    # property: the construction is a symmetric Clifford system for any
    # Pythagorean alpha and either side
    for t in (Fraction(0), Fraction(1, 5), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
        for side in (Side.LEFT, Side.RIGHT):
            sys = build_fkm_system(nom_from_t(side, t))
            assert verify_symmetric_system(sys.system).passed, (side, t)


def test_ot_systems_pass(ot_octonion, ot_quaternion):
    assert verify_symmetric_system(ot_octonion.system).passed
    assert verify_symmetric_system(ot_quaternion.system).passed
    p0 = ot_octonion.system.operator(0)
    from octoverify.linalg import identity, mat_mul

    assert mat_mul(p0, p0) == identity(32)


def test_fkm_polynomial_properties(fkm_systems, fkm_polys):
    f = fkm_polys[("left", Fraction(0))]
    assert f.is_homogeneous(4)
    frame = fkm_mirror_frame(fkm_systems[("left", Fraction(0))])
    # all <P_i x*, x*> = 0, so F(rep) = |rep|^4 = 4 for the sqrt2-scaled rep
    assert f.eval(list(frame.point.coords)) == 4


def test_munzner_fkm_and_ot(fkm_polys, ot_octonion):
    f = fkm_polys[("left", Fraction(1, 2))]
    rep = munzner_verify(f, 4, 7, 8)
    assert rep.passed
    sign = next(c.detail["sign"] for c in rep.checks if c.name == "laplacian_identity")
    assert sign == -1  # -F satisfies the (7,8)-oriented Laplacian identity
    fo = fkm_polynomial(ot_octonion.system)
    rep = munzner_verify(fo, 4, 7, 8)
    assert rep.passed
    sign = next(c.detail["sign"] for c in rep.checks if c.name == "laplacian_identity")
    assert sign == 1


def test_focal_check(fkm_systems):
    fkm = fkm_systems[("left", Fraction(0))]
    frame = fkm_mirror_frame(fkm)
    assert focal_check(fkm.system, frame.point)
    zero = on.zero(8)
    # x = (0, e_0, 0, 0): <P_-1 x, x> = -1
    x = ScaledVec(fkm.split.join(zero, E[0], zero, zero), 0)
    assert not focal_check(fkm.system, x)
    assert not focal_check(fkm.system, ScaledVec(frame.point.coords, 0))  # norm 2


def test_frames_orthonormal(fkm_systems, ot_octonion):
    for key, fkm in fkm_systems.items():
        fr = fkm_mirror_frame(fkm)
        assert frame_check(fr, 32).passed, key
    assert frame_check(ot_plus_frame(ot_octonion), 32).passed


@pytest.mark.parametrize("key", [("left", Fraction(0)), ("right", Fraction(0)), ("left", Fraction(1, 2)), ("left", Fraction(1, 3))])
def test_second_form_matrix_equals_formula(fkm_systems, key):
    rep = second_form_at_focal(fkm_systems[key])
    assert rep.passed, key


def test_second_form_spot_values(fkm_systems):
    # W with X = e_1, Y = 0, Z = e_0: p*_a components -sqrt2 <e_1 e_0, e_a> and
    # p*_-1 = |X|^2 - |Y|^2 = 1
    fkm = fkm_systems[("left", Fraction(0))]
    frame = fkm_mirror_frame(fkm)
    forms = matrix_route_forms(fkm.system, frame)
    point = [Fraction(0)] * 22
    point[0] = Fraction(1)  # x_1
    point[14] = Fraction(1)  # z_0
    vals_m1 = forms[0]
    assert vals_m1.a.eval(point) == 1 and vals_m1.b.eval(point) == 0
    got = [f.b.eval(point) for f in forms[1:]]
    assert got == [Fraction(-1) if a == 1 else Fraction(0) for a in range(8)]


def test_fkm_formula_forms_shape():
    nom = nom_from_t(Side.LEFT, Fraction(0))
    forms = fkm_formula_forms(nom)
    assert forms[0].is_rational()
    assert all(f.is_pure_sqrt2() for f in forms[1:])


def test_extraction_matches_formula(fkm_systems, fkm_polys):
    key = ("left", Fraction(1, 3))
    fkm = fkm_systems[key]
    frame = fkm_mirror_frame(fkm)
    forms = extract_expansion_forms(fkm_polys[key], frame)
    formula = fkm_formula_forms(fkm.nom)
    assert all((a - b).is_zero() for a, b in zip(forms.p, formula))
    assert forms.q[0].is_zero()
    assert all(f.is_rational() for f in forms.q)


def test_extraction_requires_focal_value():
    fkm = build_fkm_system(nom_from_t(Side.LEFT, Fraction(0)))
    f = fkm_polynomial(fkm.system)
    frame = fkm_mirror_frame(fkm)
    bad = frame.__class__(ScaledVec(frame.tangent[0].coords, 0), frame.tangent, frame.normals, -1)
    with pytest.raises(ValueError):
        extract_expansion_forms(f, bad)


def test_ot_displays_and_condition_a(ot_octonion):
    rep, forms, frame = ot_display_report(ot_octonion)
    assert rep.passed, rep.failing()
    blocks = blocks_from_forms([p.a for p in forms.p], 8, 8, 7)
    # A_a = J_a on the nose at the Condition-A point
    for a in range(1, 8):
        assert blocks.a_blocks[a - 1] == on.left_mult_matrix(E[a])
    ca = condition_a_check(blocks, DeterministicRng(3))
    assert ca.passed


def test_condition_a_rejects_nonzero_b(ot_octonion):
    rep, forms, frame = ot_display_report(ot_octonion)
    blocks = blocks_from_forms([p.a for p in forms.p], 8, 8, 7)
    blocks.b_blocks[0][0][0] = Fraction(1)
    ca = condition_a_check(blocks, DeterministicRng(3), normals=2)
    assert not ca.passed
    assert "b_blocks_zero" in ca.failing()


def test_condition_b_fkm_and_ot(fkm_systems, fkm_polys, ot_octonion):
    key = ("left", Fraction(1, 2))
    fkm = fkm_systems[key]
    frame = fkm_mirror_frame(fkm)
    forms = extract_expansion_forms(fkm_polys[key], frame)
    formula = fkm_formula_forms(fkm.nom)
    cb = condition_b_check(fkm.system, frame, formula, forms.q)
    assert cb.passed

    rep, ot_forms, ot_frame = ot_display_report(ot_octonion)
    cbo = condition_b_check(ot_octonion.system, ot_frame, ot_forms.p, ot_forms.q)
    assert cbo.passed


def test_condition_b_recipe_r_values(ot_octonion):
    # r_0b = <z, e_b>: the recipe form against the b-th normal is the z_b
    # coordinate exactly (tangent layout: u_0..7, v_0..7, z_1..7)
    from octoverify.linalg import mat_vec

    frame = ot_plus_frame(ot_octonion)
    tcount = len(frame.tangent)
    p0 = ot_octonion.system.operator(0)
    for b in range(1, 8):
        vals = []
        for j, tv in enumerate(frame.tangent):
            vals.append(on.inner(tuple(mat_vec(p0, list(tv.coords))), frame.normals[b].coords))
        nz = [(j, v) for j, v in enumerate(vals) if v]
        assert nz == [(16 + b - 1, Fraction(1))]  # z_b slot, coefficient +1


def test_ot_q_fails_condition_b_at_x_star(fkm_systems, fkm_polys):
    from octoverify.mirror import TrilinearQ, q_star_ot_eval

    key = ("left", Fraction(0))
    fkm = fkm_systems[key]
    frame = fkm_mirror_frame(fkm)
    formula = fkm_formula_forms(fkm.nom)
    qt = TrilinearQ.from_closed_form(q_star_ot_eval, 8)
    q_forms = [Rt2Poly.zero(22)] + [Rt2Poly.rational(p) for p in qt.component_polys(22)]
    cb = condition_b_check(fkm.system, frame, formula, q_forms)
    assert not cb.passed
    assert "linear_span_identity" in cb.failing()


def test_ot_q_passes_condition_b_quaternion(fkm_quaternion):
    from octoverify.mirror import TrilinearQ
    from octoverify.mirror import q_star_ot_eval

    frame = fkm_mirror_frame(fkm_quaternion)
    formula = fkm_formula_forms(fkm_quaternion.nom)
    qt = TrilinearQ.from_closed_form(lambda X, Y, Z: q_star_ot_eval(X, Y, Z), 4)
    nv = 3 * 4 - 2
    q_forms = [Rt2Poly.zero(nv)] + [Rt2Poly.rational(p) for p in qt.component_polys(nv)]
    cb = condition_b_check(fkm_quaternion.system, frame, formula, q_forms)
    assert cb.passed  # Remark-7.6 coincidence: (XY-YX)Z = X(YZ)-Y(XZ) in H


def test_mirror_intertwiner_closed_forms():
    for side, t in ((Side.LEFT, Fraction(1, 2)), (Side.RIGHT, Fraction(1, 3))):
        nom = nom_from_t(side, t)
        u, branch = mirror_intertwiner(nom)
        assert branch == (1 if side is Side.LEFT else -1)
        want = on.left_mult_matrix(on.conjugate(nom.alpha)) if side is Side.LEFT else on.right_mult_matrix(on.conjugate(nom.alpha))
        assert u == want


@pytest.mark.parametrize(
    "side,t,branch",
    [
        (Side.LEFT, Fraction(0), "XZ+YZ"),
        (Side.RIGHT, Fraction(0), "XZ+ZY"),
        (Side.LEFT, Fraction(1, 2), "XZ+YZ"),
        (Side.RIGHT, Fraction(1, 2), "XZ+ZY"),
    ],
)
def test_perturb_mirror_branches(side, t, branch, fkm_systems):
    key = ("left" if side is Side.LEFT else "right", t)
    fkm = fkm_systems.get(key) or build_fkm_system(nom_from_t(side, t))
    rep = perturb_mirror(fkm)
    assert rep.passed
    got = next(c.detail["branch"] for c in rep.checks if c.name == "second_form_branch_identity")
    assert got == branch
