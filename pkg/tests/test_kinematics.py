import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bsk.field import PoleAtPoint, UniRatFun
from bsk.kinematics import (
    BetheCollection, CardinalityProfile, IndexOutOfRange, InfeasibleProfile, enum_joint,
    enum_partitions, f, frak_f, g, gamma, h, kappa, kin, omega, phi_ij, profile_action,
    profile_recB, profile_recC, psi_ij_ell, shifted, sigma, split2,
)
from conftest import rationals

c = Fraction(1)


def test_scalar_functions():
    assert f(3, 1, c) == Fraction(3, 2)
    assert g(3, 1, c) == Fraction(1, 2)
    assert h(3, 1, c) == 3
    assert frak_f(3, 1, c) == Fraction(5, 4)
    assert gamma(1, 3, 1, c) == Fraction(-1, 2)
    assert gamma(0, 3, 1, c) == frak_f(3, 1, c)
    assert f(0, 1, c) == 0


def test_g_pole():
    with pytest.raises(PoleAtPoint):
        g(2, 2, c)


def test_omega_examples():
    assert omega(((3,),), ((1,),), c) == Fraction(5, 4)
    assert omega(((0,), (5,)), ((2,), (3,)), c) == Fraction(-9, 2)
    assert omega(((), ()), ((2,), (3,)), c) == 1


def test_kin_accepts_symbolic_points():
    x = UniRatFun.x()
    val = kin("f", x, (Fraction(1),), c)
    assert val.subs(Fraction(3)) == Fraction(3, 2)


@given(rationals(), rationals())
def test_f_h_g_relations(x, y):
    if x == y:
        return
    assert f(x, y, c) == 1 + g(x, y, c)
    assert h(x, y, c) == f(x, y, c) / g(x, y, c)
    assert g(x, y, c) == -g(y, x, c)


def test_partitions_counts():
    assert len(list(enum_partitions((("a", "b"),), CardinalityProfile(((1, 0),))))) == 2
    assert len(list(enum_joint(((1, 2),), ((3, 4),)))) == 6
    with pytest.raises(InfeasibleProfile):
        list(enum_partitions((("a",),), CardinalityProfile(((2, 0),))))


@given(st.integers(0, 6), st.integers(0, 6))
def test_split2_is_binomial(m, k):
    seq = tuple(range(m))
    out = list(split2(seq, k))
    expected = len(list(itertools.combinations(seq, k))) if k <= m else 0
    assert len(out) == expected
    for a, b in out:
        assert sorted(a + b) == list(seq)


def test_profile_action():
    assert profile_action(2, 0, 2, [3, 3]).blocks == ((2, 1), (2, 1))
    assert profile_action(1, 1, 1, [2]).blocks == ((2, 0),)
    assert profile_action(-1, -1, 1, [2]).blocks == ((0, 2),)
    assert profile_action(1, -1, 1, [2]) is None
    with pytest.raises(IndexOutOfRange):
        profile_action(3, 0, 2, [2, 2])


def test_recurrence_profiles():
    assert profile_recB(0, 2, 1, 2).blocks == ((1, 0), (0, 0))
    assert profile_recB(-1, 1, 0, 1).blocks == ((1, 0),)
    assert profile_recB(0, 2, 0, 2).blocks == ((0, 0), (0, 1))
    assert profile_recC(0, 2, 1, 2).blocks == ((1, 0), (0, 0))
    assert profile_recC(-2, 2, 1, 2).blocks == ((2, 0), (1, 0))
    assert profile_recC(0, 1, 0, 1).blocks == ((0, 0),)


def test_sigma_kappa_shift():
    assert (sigma(0), sigma(1)) == (-1, 1)
    assert kappa(1) == Fraction(1, 2)
    assert shifted(Fraction(2), 0, c) == Fraction(5, 2)


def test_phi_example():
    # h(z, z_0) = 1/2 from the colour-n boundary halves the bare prefactor 2
    z = Fraction(2)
    assert phi_ij(((z, shifted(z, 0, c)),), ((),), ((),), (), z, c, 1, 1) == 1


def test_phi_pole():
    z = Fraction(2)
    with pytest.raises(PoleAtPoint):
        phi_ij(((z,),), ((z,),), ((),), (), z, c, 0, 0)


def test_psi_examples():
    z = Fraction(2)
    assert psi_ij_ell(((),), ((),), ((),), z, c, 0, 0, 1) == 1
    # value checked against Bethe vectors on the chain
    assert psi_ij_ell(((),), ((Fraction(0),),), ((),), z, c, 0, 0, 1) == Fraction(5, 6)


def test_genericity():
    assert BetheCollection.of(((0, Fraction(1, 3)),), c).is_generic()
    assert not BetheCollection.of(((0, Fraction(1, 2)),), c).is_generic()
    with pytest.raises(ValueError):
        BetheCollection.of(((1, 1),), c)
