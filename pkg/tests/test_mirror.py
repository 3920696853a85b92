from fractions import Fraction

import pytest

from octoverify import octonion as on
from octoverify.circ import Side, left_ops, nom_from_t
from octoverify.mirror import (
    EigenDecomp,
    TrilinearQ,
    assemble_star_blocks,
    fkm_pq_tangent_forms,
    mirror_points,
    ot_pq_tangent_forms,
    p_star,
    q_star_fkm,
    q_star_fkm_eval,
    q_star_ot,
    q_star_ot_eval,
    sharp_from_q0,
    star_blocks_identity_check,
    trilinearity_extract,
    verify_ot_equations,
)
from octoverify.poly import MultiPoly
from octoverify.scalars import DeterministicRng, random_rational
from octoverify.systems import extract_expansion_forms, fkm_mirror_frame

E = [on.basis(i) for i in range(8)]
ZERO = on.zero(8)


def _amb(*slots):
    return tuple(sum((list(s) for s in slots), []))


def test_mirror_points_example():
    x = _amb(ZERO, ZERO, on.neg(E[0]), ZERO)
    n0 = _amb(ZERO, E[0], ZERO, ZERO)
    mf = mirror_points(x, n0)
    assert mf.x_sharp == n0
    assert mf.x_star.coords == _amb(ZERO, E[0], on.neg(E[0]), ZERO)
    assert mf.x_star.half == -1
    assert mf.x_star.norm_sq() == 1
    assert mf.n0_star.norm_sq() == 1
    assert on.inner(mf.x_star.coords, mf.n0_star.coords) == 0
    # swapping x and n0 fixes x* and negates n0*
    mf2 = mirror_points(n0, x)
    assert mf2.x_star.coords == mf.x_star.coords
    assert mf2.n0_star.coords == on.neg(mf.n0_star.coords)


def test_mirror_points_preconditions():
    with pytest.raises(ValueError):
        mirror_points(_amb(E[0], ZERO, ZERO, ZERO), _amb(E[0], ZERO, ZERO, ZERO))
    with pytest.raises(ValueError):
        mirror_points(_amb(on.scale(Fraction(2), E[0]), ZERO, ZERO, ZERO), _amb(ZERO, E[0], ZERO, ZERO))


def test_assemble_star_blocks_dimensions_and_zero_column():
    j = [on.left_mult_matrix(E[i]) for i in range(1, 8)]
    b_star, c_star = assemble_star_blocks(j, j)
    assert len(b_star) == 8
    assert len(b_star[0].rows) == 7 and len(b_star[0].rows[0]) == 8
    assert b_star[0].half == -1
    # the a-th column of B*_a vanishes, a = 1..7
    for a in range(1, 8):
        assert all(b_star[a - 1].rows[b][a - 1] == 0 for b in range(7))
    assert star_blocks_identity_check(b_star, c_star).passed


def test_assemble_star_blocks_nontrivial_sharp():
    j = [on.left_mult_matrix(E[i]) for i in range(1, 8)]
    sharp = left_ops(nom_from_t(Side.LEFT, Fraction(1, 2)))
    b_star, c_star = assemble_star_blocks(j, sharp)
    assert star_blocks_identity_check(b_star, c_star).passed
    with pytest.raises(ValueError):
        assemble_star_blocks(j[:3], sharp)


def test_p_star_values():
    nom = nom_from_t(Side.LEFT, Fraction(0))
    v = p_star(nom, EigenDecomp(E[1], ZERO, E[0]))
    assert v.p_minus1 == 1
    assert v.p_vec.coords == on.neg(E[1]) and v.p_vec.half == 1
    v = p_star(nom, EigenDecomp(ZERO, E[1], E[2]))
    assert v.p_minus1 == -1
    assert v.p_vec.coords == on.neg(E[3])  # -(e_1 e_2)
    # quaternionic restriction: same formula after forgetting the complement
    nom4 = nom_from_t(Side.LEFT, Fraction(0), axis=1, dim=4)
    e41 = on.basis(1, 4)
    e40 = on.basis(0, 4)
    z4 = on.zero(4)
    v4 = p_star(nom4, EigenDecomp(e41, z4, e40))
    assert v4.p_minus1 == 1 and v4.p_vec.coords == on.neg(e41)
    with pytest.raises(ValueError):
        EigenDecomp(E[0], ZERO, E[0])


def test_q_star_fkm_values():
    nom = nom_from_t(Side.LEFT, Fraction(0))
    assert q_star_fkm(nom, EigenDecomp(E[1], E[2], E[0])) == on.scale(Fraction(2), E[3])
    # extension convention: q*(e_0, Y, Z) = 0, q*(X, e_0, Z) = 0
    assert q_star_fkm_eval(nom, E[0], E[2], E[5]) == ZERO
    assert q_star_fkm_eval(nom, E[1], E[0], E[5]) == ZERO
    # quaternion right-shifted form vanishes by associativity
    nom4r = nom_from_t(Side.RIGHT, Fraction(0), axis=1, dim=4)
    rng = DeterministicRng(71)
    for _ in range(40):
        x = tuple([Fraction(0)] + [random_rational(rng, 4) for _ in range(3)])
        y = tuple([Fraction(0)] + [random_rational(rng, 4) for _ in range(3)])
        z = tuple(random_rational(rng, 4) for _ in range(4))
        assert q_star_fkm_eval(nom4r, x, y, z) == on.zero(4)


def test_q_star_ot_values():
    assert q_star_ot(EigenDecomp(E[1], E[2], E[0])) == on.scale(Fraction(2), E[3])
    assert q_star_ot(EigenDecomp(E[1], E[1], E[5])) == ZERO
    assert q_star_ot(EigenDecomp(E[1], E[2], E[3])) == on.scale(Fraction(-2), E[0])


def test_sharp_from_q0_ot_gives_j():
    # q_0 = 2<z, u conj v> determines A#_a = J_a
    nv = 8 + 8 + 7
    zero = MultiPoly.zero(nv)
    us = tuple(MultiPoly.variable(nv, i) for i in range(8))
    vs = tuple(MultiPoly.variable(nv, 8 + i) for i in range(8))
    zs = tuple([zero] + [MultiPoly.variable(nv, 16 + i) for i in range(7)])
    q0 = 2 * on.inner(zs, on.multiply(us, on.conjugate(vs)))
    blocks = sharp_from_q0(q0, 7)
    for a in range(1, 8):
        assert blocks[a - 1] == on.left_mult_matrix(E[a])
    assert sharp_from_q0(MultiPoly.zero(nv), 7) == [[[Fraction(0)] * 8 for _ in range(8)] for _ in range(7)]


def test_sharp_from_q0_round_trip_and_errors():
    nom = nom_from_t(Side.LEFT, Fraction(1, 2))
    sharp = left_ops(nom)
    nv = 23
    q0 = MultiPoly.zero(nv)
    for a in range(1, 8):
        for alpha in range(8):
            for mu in range(8):
                c = sharp[a - 1][alpha][mu]
                if c:
                    q0 = q0 + 2 * c * (
                        MultiPoly.variable(nv, alpha)
                        * MultiPoly.variable(nv, 8 + mu)
                        * MultiPoly.variable(nv, 16 + a - 1)
                    )
    assert sharp_from_q0(q0, 7) == sharp
    with pytest.raises(ValueError, match="monomial"):
        sharp_from_q0(MultiPoly.variable(nv, 0) ** 3, 7)
    with pytest.raises(ValueError):
        sharp_from_q0(MultiPoly.zero(5), 7)


def test_trilinearity_extract_success(fkm_systems, fkm_polys):
    key = ("left", Fraction(1, 2))
    fkm = fkm_systems[key]
    forms = extract_expansion_forms(fkm_polys[key], fkm_mirror_frame(fkm))
    qt = trilinearity_extract(forms.q, (7, 7, 8))
    assert qt.reindexed and qt.m1 == 7
    closed = TrilinearQ.from_closed_form(lambda X, Y, Z: q_star_fkm_eval(fkm.nom, X, Y, Z), 8)
    neg = {k: -v for k, v in closed.coeffs.items()}
    assert qt.coeffs in (closed.coeffs, neg)


def test_trilinearity_extract_errors():
    nv = 22
    zero = [MultiPoly.zero(nv)] * 9
    qt = trilinearity_extract(zero, (7, 7, 8))
    assert qt.coeffs == {}
    bad = list(zero)
    bad[1] = MultiPoly.variable(nv, 0) * MultiPoly.variable(nv, 1) * MultiPoly.variable(nv, 2)
    with pytest.raises(ValueError, match="non-trilinear"):
        trilinearity_extract(bad, (7, 7, 8))
    bad2 = list(zero)
    bad2[0] = (
        MultiPoly.variable(nv, 0) * MultiPoly.variable(nv, 7) * MultiPoly.variable(nv, 14)
    )
    with pytest.raises(ValueError, match="index-0"):
        trilinearity_extract(bad2, (7, 7, 8))


def test_tensor_contract_matches_closed_form():
    nom = nom_from_t(Side.LEFT, Fraction(1, 3))
    qt = TrilinearQ.from_closed_form(lambda X, Y, Z: q_star_fkm_eval(nom, X, Y, Z), 8)
    rng = DeterministicRng(81)
    for _ in range(60):
        x = tuple([Fraction(0)] + [random_rational(rng, 4) for _ in range(7)])
        y = tuple([Fraction(0)] + [random_rational(rng, 4) for _ in range(7)])
        z = tuple(random_rational(rng, 4) for _ in range(8))
        assert qt.contract(x, y, z) == q_star_fkm_eval(nom, x, y, z)


def test_norm_identity_between_families():
    # |q*| agreement is an equality of norms, not vectors, for the OT form
    rng = DeterministicRng(82)
    nom = nom_from_t(Side.LEFT, Fraction(0))
    vec_differs = False
    for _ in range(500):
        x = tuple([Fraction(0)] + [random_rational(rng, 4) for _ in range(7)])
        y = tuple([Fraction(0)] + [random_rational(rng, 4) for _ in range(7)])
        z = tuple(random_rational(rng, 4) for _ in range(8))
        a = q_star_ot_eval(x, y, z)
        b = q_star_fkm_eval(nom, x, y, z)
        assert on.norm_sq(a) == on.norm_sq(b)
        if a != b:
            vec_differs = True
    assert vec_differs


@pytest.mark.parametrize("key", [("left", Fraction(0)), ("right", Fraction(0)), ("left", Fraction(1, 2))])
def test_verify_ot_equations_fkm(noms, key):
    p1, pv, qt = fkm_pq_tangent_forms(noms[key])
    rep = verify_ot_equations(p1, pv, qt)
    assert rep.passed, rep.failing()


def test_verify_ot_equations_ot():
    p1, pv, qt = ot_pq_tangent_forms(8)
    rep = verify_ot_equations(p1, pv, qt)
    assert rep.passed, rep.failing()


def test_verify_ot_equations_mutation_fails(noms):
    p1, pv, qt = fkm_pq_tangent_forms(noms[("left", Fraction(0))])
    key = next(iter(qt.coeffs))
    mut = qt.mutated(key, Fraction(0))
    rep = verify_ot_equations(p1, pv, mut)
    assert not rep.passed
    assert "third_form_norm_identity" in rep.failing()


def test_trilinear_q_quintuple_round_trip():
    nom = nom_from_t(Side.LEFT, Fraction(1, 2))
    qt = TrilinearQ.from_closed_form(lambda X, Y, Z: q_star_fkm_eval(nom, X, Y, Z), 8)
    rows = qt.to_quintuples()
    assert TrilinearQ.from_quintuples(7, rows).coeffs == qt.coeffs
    assert all(len(r) == 5 for r in rows)


def test_verify_ot_equations_randomized_mode():
    from octoverify.scalars import ScalarMode

    p1, pv, qt = fkm_pq_tangent_forms(nom_from_t(Side.LEFT, Fraction(0)))
    rep = verify_ot_equations(p1, pv, qt, mode=ScalarMode.floating(1e-9), rng=DeterministicRng(5))
    assert rep.passed
