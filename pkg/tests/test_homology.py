import random

import pytest
from hypothesis import given, settings, strategies as st

from asymcg import thompson as tv
from asymcg.errors import InvalidInput, SupportLimitError
from asymcg.homology import (
    FinSymplectic,
    HomClass,
    apply_op,
    compose_ops,
    dehn_twist,
    generator_shadow,
    invert_op,
    is_symplectic,
    j_apply,
    omega,
    power_op,
    pure_permutation,
    transvection,
    word_shadow,
)
from asymcg.suites import random_word
from asymcg.tree import FiniteSubtree

a, b = HomClass.a, HomClass.b
E = FinSymplectic.identity()
seeds = st.integers(min_value=0, max_value=2**32)
EDGES = ["0", "1", "2", "0L", "1R", "2LR", "1LL"]


def random_class(rng, terms=4):
    x = HomClass.zero()
    for _ in range(terms):
        x = x + rng.choice((a, b))(rng.choice(EDGES)) * rng.randint(-3, 3)
    return x


def test_omega_basis_table():
    assert omega(a("1"), b("1")) == 1
    assert omega(b("1"), a("1")) == -1
    assert omega(a("1"), b("0")) == 0
    assert omega(a("1"), a("1")) == 0


def test_omega_bilinear_example():
    assert omega(a("1") * 2 + b("2") * 3, b("1") - a("2")) == 5


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_omega_alternating_and_j(seed):
    rng = random.Random(seed)
    x, y = random_class(rng), random_class(rng)
    assert omega(x, x) == 0
    assert omega(x, y) == -omega(y, x)
    assert j_apply(j_apply(x)) == -x
    # J is compatible with omega
    assert omega(j_apply(x), j_apply(y)) == omega(x, y)


def test_j_on_basis():
    assert j_apply(b("0L")) == a("0L")
    assert j_apply(a("0L")) == -b("0L")
    assert j_apply(HomClass.zero()) == HomClass.zero()


def test_twist_of_meridian_on_longitude():
    t = dehn_twist(a("1"))
    assert apply_op(t, b("1")) == b("1") - a("1")
    assert apply_op(t, a("1")) == a("1")
    assert transvection(a("1"), b("1"), 3) == b("1") - a("1") * 3


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_twists_fix_their_curve_and_are_symplectic(seed):
    rng = random.Random(seed)
    g = random_class(rng)
    t = dehn_twist(g)
    assert apply_op(t, g) == g
    assert is_symplectic(t)
    assert compose_ops(t, dehn_twist(g, -1)).is_identity()
    assert power_op(t, 3) == dehn_twist(g, 3)


def test_generator_shadow_relations():
    assert power_op(generator_shadow("alpha"), 4).is_identity()
    assert generator_shadow("t0").is_identity()
    assert generator_shadow("t").is_identity()
    assert power_op(generator_shadow("beta"), 3).is_identity()
    assert power_op(generator_shadow("pi"), 2).is_identity()
    assert not power_op(generator_shadow("beta"), 2).is_identity()


def test_pi_squared_end_map_by_brute_force():
    sq = tv.compose(tv.PI_V, tv.PI_V)
    for e in ["0", "1", "2", "0LR", "1RRL"]:
        assert tv.edge_action(sq, e) == e


def test_rigid_generators_have_identity_blocks():
    for name, image in (("alpha", tv.ALPHA_V), ("beta", tv.BETA_V), ("pi", tv.PI_V)):
        f = generator_shadow(name)
        assert f.end_map == image
        n = len(f.basis)
        assert f.block == [[int(i == j) for j in range(n)] for i in range(n)]
    alpha = generator_shadow("alpha")
    assert apply_op(alpha, a("1")) == a("1")
    assert apply_op(alpha, b("1")) == b("1")


def test_twist_generators_match_loops():
    assert generator_shadow("t_a1") == dehn_twist(a("1"))
    assert generator_shadow("t_b1") == dehn_twist(b("1"))
    assert generator_shadow("t_wc") == dehn_twist(b("0") - b("1"))
    assert generator_shadow("t_vc") == dehn_twist(b("1"))
    with pytest.raises(InvalidInput):
        generator_shadow("gamma")


def test_rigid_action_outside_support():
    f = generator_shadow("beta")
    assert apply_op(f, a("0LR")) == a("1LR")
    assert apply_op(f, b("2")) == b("0")


def test_mutated_block_is_not_symplectic():
    f = word_shadow("t_a1 t_b1^2 tw[0,1L]")
    assert is_symplectic(f)
    block = [row[:] for row in f.block]
    block[0][0] += 1
    assert not is_symplectic(FinSymplectic.from_block(f.support, block, f.end_map))


def test_identity_operator():
    assert is_symplectic(E)
    assert word_shadow("").is_identity()
    assert E == FinSymplectic.from_block(FiniteSubtree.closure(["0L"]), [
        [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_equality_across_supports():
    t = dehn_twist(a("0"))
    assert t == t.extend(FiniteSubtree.closure(["2L", "0R"]))
    assert t != dehn_twist(a("0"), 2)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_group_laws_on_words(seed):
    rng = random.Random(seed)
    f, g, h = (word_shadow(random_word(rng, 6)) for _ in range(3))
    assert compose_ops(f, invert_op(f)).is_identity()
    assert compose_ops(invert_op(f), f).is_identity()
    assert compose_ops(f, compose_ops(g, h)) == compose_ops(compose_ops(f, g), h)
    x = random_class(rng)
    assert apply_op(compose_ops(f, g), x) == apply_op(f, apply_op(g, x))
    assert omega(apply_op(f, x), apply_op(f, b("0"))) == omega(x, b("0"))


def test_power_law():
    f = word_shadow("t_a1 beta t_wc")
    assert power_op(f, 5) == compose_ops(power_op(f, 2), power_op(f, 3))
    assert power_op(f, -2) == invert_op(power_op(f, 2))
    assert power_op(f, 0).is_identity()


def test_sl2_relation_on_wrist_one():
    assert power_op(word_shadow("t_a1 t_b1"), 6).is_identity()
    assert not power_op(word_shadow("t_a1 t_b1"), 3).is_identity()
    assert power_op(word_shadow("t_a1 t_b1"), 3) == power_op(word_shadow("t_a1 t_b1 t_a1"), 2)


def test_word_order_rightmost_first():
    g = word_shadow("t_a1 beta")
    x = a("0")
    assert apply_op(g, x) == apply_op(generator_shadow("t_a1"), a("1"))


def test_pure_permutation_is_rigid():
    f = pure_permutation(tv.BETA_V)
    assert f.end_map == tv.BETA_V
    assert apply_op(f, a("0")) == a("1")


def test_support_cap():
    with pytest.raises(SupportLimitError):
        word_shadow("tw[0LLLL,2RRRR]", max_support=5)
    assert word_shadow("tw[0LLLL,2RRRR]", max_support=64)


def test_json_layout():
    d = dehn_twist(a("1")).to_json()
    assert d["basis"] == ["a[1]", "b[1]"]
    assert d["block"] == [[1, -1], [0, 1]]
    assert d["endMap"] == "(0 1 2 | 0 1 2 | 0 1 2)"


def test_homclass_validation():
    with pytest.raises(InvalidInput):
        HomClass({("c", "0"): 1})
    with pytest.raises(InvalidInput):
        HomClass({("a", "3"): 1})
    assert HomClass([(("a", "0"), 2), (("a", "0"), -2)]) == HomClass.zero()
