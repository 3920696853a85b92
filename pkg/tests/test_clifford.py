from fractions import Fraction

import pytest

from octoverify import octonion as on
from octoverify.circ import CircTable
from octoverify.clifford import (
    SymmetricCliffordSystem,
    delta_dimension,
    find_intertwiner,
    conjugation_residual,
    normalize_a_system,
    refined_residual,
    verify_a_system,
    verify_skew_rep,
    verify_symmetric_system,
    volume_sign,
)
from octoverify.linalg import identity, mat_mul, random_rational_orthogonal, transpose
from octoverify.scalars import DeterministicRng


def test_delta_dimension_table():
    assert [delta_dimension(m) for m in range(1, 9)] == [1, 2, 4, 4, 8, 8, 8, 8]
    assert delta_dimension(3) == 4
    assert delta_dimension(7) == 8
    assert delta_dimension(9) == 16
    assert delta_dimension(17) == 256
    with pytest.raises(ValueError):
        delta_dimension(0)


def test_multiplicity_formula_consistency():
    # m2 = k delta(m1) - m1 - 1 with k = 2 for both exceptional pairs
    assert 2 * delta_dimension(7) - 7 - 1 == 8
    assert 2 * delta_dimension(3) - 3 - 1 == 4


def test_verify_skew_rep():
    j = on.j_generators()
    jp = on.j_prime_generators()
    assert verify_skew_rep(j).passed
    assert verify_skew_rep(jp).passed
    bad = verify_skew_rep([j[0], j[0]])
    assert not bad.passed
    with pytest.raises(ValueError):
        verify_skew_rep([j[0], [row[:4] for row in j[1][:4]]])


def test_verify_symmetric_system(fkm_systems):
    assert verify_symmetric_system(fkm_systems[("left", Fraction(0))].system).passed
    ident = identity(4)
    assert verify_symmetric_system(SymmetricCliffordSystem([ident], 0)).passed
    assert not verify_symmetric_system(SymmetricCliffordSystem([ident, ident], 0)).passed


def test_volume_signs():
    assert volume_sign(on.j_generators()) == -1
    assert volume_sign(on.j_prime_generators()) == 1
    assert volume_sign(on.j_generators(4)) == -1
    assert volume_sign(on.j_prime_generators(4)) == 1
    with pytest.raises(ValueError):
        volume_sign(on.j_generators()[:2])


def test_normalize_identity_a_system():
    j = on.j_generators()
    norm = normalize_a_system(j)
    assert norm.exact
    assert refined_residual(norm, j) == 0
    assert norm.witness[-1] == identity(8)
    assert verify_skew_rep(norm.witness[:-1]).passed


def test_normalize_seeded_a_systems():
    rng = DeterministicRng(101)
    j = on.j_generators()
    for trial in range(3):
        o = random_rational_orthogonal(rng.fork(trial), 8)
        a = [mat_mul(o, m) for m in j]
        norm = normalize_a_system(a)
        assert norm.exact
        assert refined_residual(norm, a) == 0
        # refined P, Q are orthogonal
        assert mat_mul(norm.p_refined, transpose(norm.p_refined)) == identity(8)
        assert mat_mul(norm.q_refined, transpose(norm.q_refined)) == identity(8)


def test_normalize_quaternionic():
    j4 = on.j_generators(4)
    norm = normalize_a_system(j4)
    assert norm.exact
    assert refined_residual(norm, j4) == 0


def test_normalize_rejects_bad_system():
    j = on.j_generators()
    bad = list(j)
    bad[0] = [[2 * x for x in row] for row in bad[0]]
    with pytest.raises(ValueError, match="pair"):
        normalize_a_system(bad)
    rep = verify_a_system(bad)
    assert not rep.passed
    assert rep.checks[0].detail["first_failing_pair"] == (1, 1)


def test_find_intertwiner_conjugated():
    rng = DeterministicRng(55)
    j = on.j_generators()
    o = random_rational_orthogonal(rng, 8)
    rep2 = [mat_mul(mat_mul(o, m), transpose(o)) for m in j]
    res = find_intertwiner(j, rep2)
    assert res.found and res.exact
    assert conjugation_residual(res, j, rep2) == 0


def test_find_intertwiner_inequivalent_and_self():
    j = on.j_generators()
    jp = on.j_prime_generators()
    assert not find_intertwiner(j, jp).found
    res = find_intertwiner(j, j)
    assert res.found and res.exact
    assert conjugation_residual(res, j, j) == 0


def test_skew_rep_plus_identity_is_orthogonal_multiplication():
    # cross-module property: any verified skew rep E_a with Id appended gives
    # a normalized orthogonal multiplication e_a o x := E_a(x)
    for rep in (on.j_prime_generators(), on.j_generators()):
        assert verify_skew_rep(rep).passed
        entries = [[on.basis(b, 8) for b in range(8)]]
        for m in rep:
            entries.append([tuple(m[r][b] for r in range(8)) for b in range(8)])
        table = CircTable(entries)
        rng = DeterministicRng(77)
        from octoverify.scalars import random_rational

        for _ in range(50):
            x = tuple(random_rational(rng, 5) for _ in range(8))
            y = tuple(random_rational(rng, 5) for _ in range(8))
            assert on.norm_sq(table.mul(x, y)) == on.norm_sq(x) * on.norm_sq(y)
        assert table.mul(on.basis(0, 8), on.basis(3, 8)) == on.basis(3, 8)
