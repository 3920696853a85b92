from fractions import Fraction

import pytest

from octoverify import octonion as on
from octoverify.circ import (
    Nom,
    Side,
    circ,
    comparison_check,
    cos_sin_2theta,
    left_ops,
    make_nom,
    nom_from_sharp_blocks,
    nom_from_t,
    nom_table,
    theta_axis,
    verify_normalized,
)
from octoverify.clifford import verify_skew_rep
from octoverify.scalars import DeterministicRng, random_rational

E = [on.basis(i) for i in range(8)]


def test_circ_endpoint_values():
    left = nom_from_t(Side.LEFT, Fraction(0))
    right = nom_from_t(Side.RIGHT, Fraction(0))
    assert circ(left, E[1], E[2]) == E[3]
    assert circ(right, E[1], E[2]) == on.neg(E[3])  # e_2 e_1 = -e_3


def test_circ_pythagorean_value():
    # alpha = (3/5) e_0 + (4/5) e_4: e_1 o e_2 = (-7/25) e_3 + (24/25) e_7,
    # matching cos(2 theta) ab + sin(2 theta)(ab)e with cos = -7/25, sin = 24/25
    nom = nom_from_t(Side.LEFT, Fraction(1, 2))
    got = circ(nom, E[1], E[2])
    want = on.add(on.scale(Fraction(-7, 25), E[3]), on.scale(Fraction(24, 25), E[7]))
    assert got == want
    c2, s2 = cos_sin_2theta(nom)
    assert (c2, s2) == (Fraction(-7, 25), Fraction(24, 25))


def test_circ_bilinear_and_normalized():
    nom = nom_from_t(Side.LEFT, Fraction(1, 3))
    rng = DeterministicRng(41)
    for _ in range(50):
        x = tuple(random_rational(rng, 5) for _ in range(8))
        y = tuple(random_rational(rng, 5) for _ in range(8))
        assert on.norm_sq(circ(nom, x, y)) == on.norm_sq(x) * on.norm_sq(y)
        assert circ(nom, E[0], y) == y
        assert circ(nom, x, E[0]) == x


@pytest.mark.parametrize("side", [Side.LEFT, Side.RIGHT])
@pytest.mark.parametrize("t", [Fraction(0), Fraction(1, 2), Fraction(2, 7)])
def test_verify_normalized_passes(side, t):
    nom = nom_from_t(side, t)
    assert verify_normalized(nom, samples=60).passed


def test_verify_normalized_rejects_scaled_alpha():
    # raw constructor bypasses validation on purpose
    broken = Nom(Side.LEFT, on.scale(Fraction(2), E[0]))
    assert not verify_normalized(broken, samples=10).passed
    with pytest.raises(ValueError):
        make_nom(Side.LEFT, on.scale(Fraction(2), E[0]))


def test_verify_normalized_quaternionic():
    nom = nom_from_t(Side.LEFT, Fraction(0), axis=1, dim=4)
    assert verify_normalized(nom, samples=60).passed


def test_theta_axis():
    ta = theta_axis(E[0])
    assert ta.degenerate and (ta.c, ta.s) == (1, 0) and ta.axis == E[1]
    ta = theta_axis(on.add(on.scale(Fraction(3, 5), E[0]), on.scale(Fraction(4, 5), E[4])))
    assert (ta.c, ta.s) == (Fraction(3, 5), Fraction(4, 5)) and ta.axis == E[4]
    ta = theta_axis(E[2])
    assert (ta.c, ta.s) == (0, 1) and ta.axis == E[2]
    with pytest.raises(ValueError):
        theta_axis(on.scale(Fraction(2), E[0]))
    with pytest.raises(ValueError):
        # unit alpha whose imaginary part has irrational norm sqrt(3)/2
        theta_axis((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0), Fraction(0), Fraction(0)))


def test_left_ops_are_skew_rep():
    for t in (Fraction(0), Fraction(1, 2)):
        for side in (Side.LEFT, Side.RIGHT):
            assert verify_skew_rep(left_ops(nom_from_t(side, t))).passed


def test_nom_from_sharp_blocks_octonion_tables():
    j = [on.left_mult_matrix(E[i]) for i in range(1, 8)]
    table = nom_from_sharp_blocks(j)
    for a in range(8):
        for b in range(8):
            assert table.entries[a][b] == on.multiply(E[a], E[b])
    jp = [on.right_mult_matrix(E[i]) for i in range(1, 8)]
    table = nom_from_sharp_blocks(jp)
    for a in range(8):
        for b in range(8):
            assert table.entries[a][b] == on.multiply(E[b], E[a])


def test_nom_from_sharp_blocks_round_trip():
    nom = nom_from_t(Side.LEFT, Fraction(1, 2))
    rebuilt = nom_from_sharp_blocks(left_ops(nom))
    assert rebuilt.entries == nom_table(nom).entries
    assert rebuilt.as_signed_pairs() is None  # generic alpha is not a signed table
    t0 = nom_table(nom_from_t(Side.LEFT, Fraction(0)))
    pairs = t0.as_signed_pairs()
    assert pairs is not None and pairs[1][2] == (1, 3)


def test_nom_from_sharp_blocks_preconditions():
    j = [on.left_mult_matrix(E[i]) for i in range(1, 8)]
    bad = [m for m in j]
    bad[0] = [[x * 2 for x in row] for row in bad[0]]
    with pytest.raises(ValueError):
        nom_from_sharp_blocks(bad)
    swapped = [j[1], j[0]] + j[2:]  # A#_1(e_0) = e_2 != e_1
    with pytest.raises(ValueError, match="e_"):
        nom_from_sharp_blocks(swapped)


def test_comparison_check_branches():
    nom = nom_from_t(Side.LEFT, Fraction(1, 2))
    # {e_1, e_2, e_3} all perpendicular to the axis e_4
    assert comparison_check(nom, E[1], E[2]).passed
    # ab parallel to the axis: a o b = ab
    nom3 = make_nom(Side.LEFT, on.add(on.scale(Fraction(3, 5), E[0]), on.scale(Fraction(4, 5), E[3])))
    rep = comparison_check(nom3, E[1], E[2])
    assert rep.passed and rep.checks[0].name == "parallel_branch_ab"
    assert circ(nom3, E[1], E[2]) == E[3]
    # neither branch: error
    with pytest.raises(ValueError, match="not covered"):
        comparison_check(nom3, E[1], E[3])
    with pytest.raises(ValueError):
        comparison_check(nom3, E[1], on.scale(Fraction(2), E[2]))
    with pytest.raises(ValueError):
        comparison_check(nom_from_t(Side.RIGHT, Fraction(1, 2)), E[1], E[2])


def test_circ_exchange_identities():
    rng = DeterministicRng(43)
    for t in (Fraction(0), Fraction(1, 2)):
        for side in (Side.LEFT, Side.RIGHT):
            nom = nom_from_t(side, t)
            for _ in range(60):
                x = tuple(random_rational(rng, 4) for _ in range(8))
                y = tuple(random_rational(rng, 4) for _ in range(8))
                z = tuple(random_rational(rng, 4) for _ in range(8))
                assert on.inner(circ(nom, x, y), z) == on.inner(y, circ(nom, on.conjugate(x), z))
                assert on.inner(circ(nom, x, y), z) == on.inner(x, circ(nom, z, on.conjugate(y)))
                lhs = on.add(
                    circ(nom, x, circ(nom, on.conjugate(y), z)),
                    circ(nom, y, circ(nom, on.conjugate(x), z)),
                )
                assert lhs == on.scale(2 * on.inner(x, y), z)


def test_quaternionic_restriction():
    rng = DeterministicRng(44)
    # alpha inside the quaternion span: restriction to H is xy or yx
    for side, t in ((Side.LEFT, Fraction(2, 5)), (Side.RIGHT, Fraction(2, 5))):
        nom = nom_from_t(side, t, axis=2)
        for _ in range(80):
            x = tuple([random_rational(rng, 4) for _ in range(4)] + [Fraction(0)] * 4)
            y = tuple([random_rational(rng, 4) for _ in range(4)] + [Fraction(0)] * 4)
            want = on.multiply(x, y) if side is Side.LEFT else on.multiply(y, x)
            assert circ(nom, x, y) == want
