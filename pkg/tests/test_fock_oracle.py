from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bsk.field import UniRatFun
from bsk.fock_oracle import (
    Chain, ChainSpec, DimensionCap, NotOnShell, action_formula_check, centrality_scalar,
    chain, commutator_check, coproduct_check, frt_check, ket_apply, lam_consistency,
    oracle_scalar, r_matrix, reversed_dual, transfer_eigencheck, yang_baxter_check,
    zero_mode_check, zero_mode_commutator,
)
from bsk.scalar_product import chain_model, scalar_sum
from conftest import generic_pair, seeded

F = Fraction
c = F(1)
x = UniRatFun.x()


def test_r_matrix_at_one():
    d = 3
    R = r_matrix(F(1), 1, c)
    expected = {}
    for a in range(d):
        for b in range(d):
            row = a * d + b
            expected[(row, row)] = expected.get((row, row), 0) + 1
            col = b * d + a
            expected[(row, col)] = expected.get((row, col), 0) + 1
    for a in range(d):
        for b in range(d):
            key = (a * d + (d - 1 - a), b * d + (d - 1 - b))
            expected[key] = expected.get(key, 0) - F(2, 3)
    assert R == {k: v for k, v in expected.items() if v != 0}


def test_yang_baxter():
    assert yang_baxter_check(F(2), F(5), 1, c)
    assert yang_baxter_check(F(7, 3), F(-2, 5), 2, c)


def test_single_site_monodromy():
    ch = chain(1, c, [0])
    z = F(5, 3)
    for i in range(-1, 2):
        for j in range(-1, 2):
            expected = {}
            if i == j:
                expected = {(k, k): 1 for k in range(3)}
            key = (j + 1, i + 1)
            expected[key] = expected.get(key, 0) + c / z
            key = (-i + 1, -j + 1)
            expected[key] = expected.get(key, 0) - c / (z + c / 2)
            assert ch.Tij(i, j, z) == {k: v for k, v in expected.items() if v != 0}


def test_vacuum_lambdas():
    ch = chain(1, c, [0])
    lams = ch.vacuum_and_lambdas()[1]
    half = F(1, 2)
    assert lams[0] == 1 + 1 / x
    assert lams[1] == UniRatFun.const(1)
    assert lams[2] == (x - half) / (x + half)
    assert ch.alpha(0, F(3)) == F(7, 5)
    two = chain(1, c, [0, 0])
    assert two.alpha(0, F(3)) == F(49, 25)


def test_centrality_multiplicative():
    one = centrality_scalar(chain(1, c, [F(1, 3)]))
    two = centrality_scalar(chain(1, c, [F(1, 3), F(1, 3)]))
    assert two == one * one


def test_lambda_constraint():
    assert lam_consistency(chain(1, c, [0]).vacuum_and_lambdas()[1], 1, c)["pass"]
    assert lam_consistency(chain(2, c, [0]).vacuum_and_lambdas()[1], 2, c)["pass"]
    ideal = [UniRatFun.const(1)] * 5
    r = lam_consistency(ideal, 2, c)
    assert r["pass"] and r["ratio"] == UniRatFun.const(1)


def test_bethe_vector_small():
    ch = chain(1, c, [0])
    vac = ch.vacuum_and_lambdas()[0]
    assert ch.bethe_vector(((),)) == vac
    u = F(2, 7)
    B = ch.bethe_vector(((u,),))
    # with u empty the (-1, 1) term needs |u_I| = 1 and drops out
    assert B == [0, F(14, 3), 0]
    assert B == [a / ch.lam(1, u) for a in ket_apply(ch.Tij(0, 1, u), vac)]


def test_dual_vector_small():
    ch = chain(1, c, [0])
    vac = ch.vacuum_and_lambdas()[0]
    v = F(9, 4)
    assert ch.dual_bethe_vector(((),)) == vac
    T = ch.Tij(1, 0, v)
    row = [sum(vac[r] * T.get((r, col), 0) for r in range(3)) for col in range(3)]
    assert ch.dual_bethe_vector(((v,),)) == [a / ch.lam(1, v) for a in row]


def test_oracle_fixture():
    spec = ChainSpec.of(1, c, [0])
    assert oracle_scalar(((3,),), ((2,),), spec) == F(4, 15)
    assert oracle_scalar(((),), ((),), spec) == 1
    assert oracle_scalar(((3,),), ((),), spec) == 0


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6),
       st.sampled_from([(1, 1, (1,)), (1, 2, (2,)), (1, 3, (1,)), (2, 1, (1, 1)), (2, 2, (0, 1))]))
def test_oracle_matches_sum(seed, case):
    n, L, sizes = case
    rng = seeded(seed)
    ch = chain(n, c, [F(rng.randint(-30, 30), 7) for _ in range(L)])
    u, v = generic_pair(rng, sizes)
    assert ch.scalar(v, u) == scalar_sum(v, u, chain_model(ch)).value


def test_frt_and_commutators():
    for n, L in ((1, 1), (1, 2), (2, 1)):
        ch = chain(n, c, [F(k, 5) for k in range(L)])
        assert frt_check(ch, F(7, 3), F(-11, 4))
        assert commutator_check(ch, F(7, 3), F(-11, 4), 0, 1, 1, 0)


def test_action_formula():
    assert action_formula_check(1, 1, F(2), ((),), chain(1, c, [0]))["pass"]
    assert action_formula_check(0, 1, F(13, 3), ((F(2, 7),),), chain(1, c, [0, F(1, 3)]))["pass"]
    r = action_formula_check(-2, 2, F(13, 3), ((), ()), chain(2, c, [F(1, 5)]))
    assert r["pass"]


def test_zero_modes():
    ch = chain(1, c, [0, F(1, 3)])
    assert zero_mode_check(((),), ch)["pass"]
    assert zero_mode_check(((F(5, 7),),), ch)["pass"]
    t = ch.grading_ops()[0]
    vac = ch.vacuum_and_lambdas()[0]
    assert all(a == 0 for a in ket_apply(t, vac))
    assert zero_mode_commutator(chain(1, c, [0]), 0, 1, 1, 0)


def test_transfer_eigencheck():
    ch = chain(1, c, [0, 0])
    assert transfer_eigencheck(((F(0),),), F(7, 3), ch)["pass"]
    assert transfer_eigencheck(((),), F(7, 3), ch)["pass"]
    with pytest.raises(NotOnShell):
        transfer_eigencheck(((F(1),),), F(7, 3), ch)


def test_coproduct():
    assert coproduct_check(((),), 1, chain(1, c, [0, F(1, 3)]))["pass"]
    r = coproduct_check(((F(5, 7),),), 1, chain(1, c, [0, F(1, 3)]))
    assert r["pass"] and r["terms"] == 2
    assert coproduct_check(((F(5, 7),), ()), 1, chain(2, c, [0, F(1, 3)]))["pass"]


def test_reversed_dual():
    ch = chain(1, c, [0, F(2, 3)])
    for v in (((F(5, 7),),), ((F(5, 7), F(-9, 4)),)):
        assert reversed_dual(v, ch) == ch.dual_bethe_vector(v)


def test_scale_invariance():
    fn = (x * x + 3) / (x - F(7, 2))
    for n, L, sizes in ((1, 2, (1,)), (1, 2, (2,)), (2, 1, (1, 1))):
        spec = ChainSpec.of(n, c, [F(k, 3) for k in range(L)])
        u, v = generic_pair(seeded(n + L), sizes)
        plain, scaled = Chain(spec), Chain(spec, scale_fn=fn)
        assert plain.bethe_vector(u) == scaled.bethe_vector(u)
        assert plain.scalar(v, u) == scaled.scalar(v, u)


def test_dimension_cap(monkeypatch):
    with pytest.raises(DimensionCap):
        chain(1, c, [0, 0, 0], cap=10)
    monkeypatch.setenv("BSK_DIM_CAP", "5")
    with pytest.raises(DimensionCap):
        chain(1, c, [0, 0])
