import random

import pytest
from hypothesis import given, settings, strategies as st

from asymcg import thompson as tv
from asymcg.errors import InvalidInput
from asymcg.thompson import ALPHA_V, BETA_V, PI_V, TreePair
from asymcg.tree import FiniteSubtree, leaves_cyclic, random_subtree
from asymcg.words import parse

E = TreePair.identity()
seeds = st.integers(min_value=0, max_value=2**32)


def pair(seed, n=10):
    return tv.random_tree_pair(random.Random(seed), n)


def test_reduce_identity_on_any_tree():
    t = random_subtree(random.Random(2), 12)
    assert tv.reduce(TreePair(t, t, leaves_cyclic(t))) == E


def test_generator_orders():
    assert tv.order(ALPHA_V, 10) == 4
    assert tv.order(BETA_V, 10) == 3
    assert tv.order(PI_V, 10) == 2
    assert tv.order(E, 10) == 1


def test_alpha_fourth_power_by_nested_composition():
    a = ALPHA_V
    assert tv.compose(a, tv.compose(a, tv.compose(a, a))) == E


def test_order_bound_exceeded():
    g = tv.compose(ALPHA_V, PI_V)
    k = tv.order(g, 50)
    assert k is None or tv.is_identity(tv.power(g, k))
    assert tv.order(BETA_V, 2) is None


def test_circularity():
    assert tv.is_circular(E)
    assert tv.is_circular(ALPHA_V)
    assert tv.is_circular(BETA_V)
    assert not tv.is_circular(PI_V)


def test_beta_inverse_is_square():
    assert tv.invert(BETA_V) == tv.power(BETA_V, 2)
    assert tv.invert(E) == E


def test_compose_applies_right_factor_first():
    # beta then pi: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
    g = tv.compose(PI_V, BETA_V)
    assert g.mapping == {"0": "0", "1": "2", "2": "1"}


def test_edge_action():
    assert tv.edge_action(E, "1LR") == "1LR"
    for leaf, image in ALPHA_V.mapping.items():
        assert tv.edge_action(ALPHA_V, leaf) == image
    assert tv.edge_action(ALPHA_V, "1LRL") == "1RRL"
    with pytest.raises(InvalidInput):
        tv.edge_action(ALPHA_V, "1")


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_group_axioms(seed):
    rng = random.Random(seed)
    g, h, k = (tv.random_tree_pair(rng, 8) for _ in range(3))
    assert tv.compose(g, tv.compose(h, k)) == tv.compose(tv.compose(g, h), k)
    assert tv.compose(g, tv.invert(g)) == E
    assert tv.compose(tv.invert(g), g) == E
    assert tv.compose(E, g) == g == tv.compose(g, E)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 3))
def test_reduced_form_is_canonical(seed, grow):
    rng = random.Random(seed)
    g = tv.random_tree_pair(rng, 8)
    assert g.is_reduced()
    big = g
    for _ in range(grow):
        big = tv.expand(big, rng.choice(leaves_cyclic(big.domain)))
    assert tv.reduce(big) == g
    t = random_subtree(rng, 10)
    from asymcg.tree import common_refinement

    assert tv.reduce(tv.expand_to(g, common_refinement(t, g.domain))) == g


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_edge_action_is_a_homomorphism(seed):
    rng = random.Random(seed)
    g, h = pair(rng.random()), pair(rng.random())
    gh = tv.compose(g, h)
    for _ in range(5):
        e = "".join([rng.choice("012")] + [rng.choice("LR") for _ in range(12)])
        assert tv.edge_action(gh, e) == tv.edge_action(g, tv.edge_action(h, e))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_relabel_is_conjugation_by_beta(seed):
    g = pair(seed)
    conj = tv.compose(BETA_V, tv.compose(g, tv.invert(BETA_V)))
    assert tv.relabel(g) == conj
    assert tv.is_circular(tv.relabel(g)) == tv.is_circular(g)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_serialization_round_trip(seed):
    g = pair(seed, 14)
    assert tv.deserialize(tv.serialize(g)) == g


def test_serialize_identity():
    assert tv.serialize(E) == "(0 1 2 | 0 1 2 | 0 1 2)"
    assert tv.serialize(BETA_V) == "(0 1 2 | 0 1 2 | 1 2 0)"


@pytest.mark.parametrize("text", [
    "0 1 2 | 0 1 2 | 0 1 2",
    "(0 1 2 | 0 1 2)",
    "(0 1 2 | 0 1 2 | 0 0 1)",
    "(0 1 2 | 0L 0R 1 2 | 0 1 2)",
    "(1 2 0 | 0 1 2 | 0 1 2)",
])
def test_deserialize_rejects(text):
    with pytest.raises(InvalidInput):
        tv.deserialize(text)


def test_tree_pair_validation():
    t = FiniteSubtree.closure(["0"])
    with pytest.raises(InvalidInput):
        TreePair(t, FiniteSubtree.base(), ("0", "1", "2"))
    with pytest.raises(InvalidInput):
        TreePair(t, t, ("0L", "0L", "1", "2"))


def test_projection_of_words():
    assert tv.is_identity(tv.project(parse("beta^3")))
    assert tv.is_identity(tv.project(parse("alpha^4 t_a1 tw[0,1L]")))
    assert tv.project(parse("pi beta")) == tv.compose(PI_V, BETA_V)
    assert tv.project(parse("alpha^-1")) == tv.invert(ALPHA_V)


def test_dot_output():
    dot = tv.pair_to_dot(ALPHA_V)
    assert "cluster_domain" in dot and "cluster_range" in dot
