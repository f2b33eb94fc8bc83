from __future__ import annotations

import math

import pytest

from nilhecke.coxeter import (
    CoxeterGroup,
    InvalidCartanError,
    NotFiniteError,
    UnsupportedOrderError,
    group_make,
)
from nilhecke.presets import PRESET_NAMES, preset
from nilhecke.scalar import field_preset

# (name, group order) from the classification tables
ORDERS = {"A1": 2, "A1xA1": 4, "A2": 6, "B2": 8, "B2_sym": 8, "G2": 12, "G2_sym": 12,
          "I2_5": 10, "A3": 24, "B3": 48, "H3": 120}


def test_default_cartan_for_order_three():
    g = group_make([[1, 3], [3, 1]])
    assert [str(x) for x in (g.cartan[0][1], g.cartan[1][0])] == ["-1", "-1"]


def test_b2_integral_cartan_accepted():
    g = group_make([[1, 4], [4, 1]], cartan=[[2, -1], [-2, 2]])
    assert g.order == 8


def test_bad_cartan_rejected():
    with pytest.raises(InvalidCartanError):
        group_make([[1, 4], [4, 1]], cartan=[[2, -1], [-3, 2]])


def test_unsupported_order_without_field():
    with pytest.raises(UnsupportedOrderError):
        group_make([[1, 7], [7, 1]])


def test_order_seven_with_user_field():
    # 2cos(pi/7) is the largest root of x^3 - x^2 - 2x + 1
    from nilhecke.scalar import field_make

    field = field_make([1, -2, -1, 1])
    g = group_make([[1, 7], [7, 1]], field=field)
    assert g.order == 14
    assert math.isclose(-g.cartan[0][1].to_float(), 2 * math.cos(math.pi / 7), abs_tol=1e-12)


def test_enumeration_cap():
    with pytest.raises(NotFiniteError):
        CoxeterGroup([[1, 3, 2], [3, 1, 5], [2, 5, 1]], field=field_preset("QQ(phi)"), cap=50)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_group_orders(name):
    assert preset(name).order == ORDERS[name]


def test_a2_lengths():
    lengths = sorted(w.length for w in preset("A2").elements)
    assert lengths == [0, 1, 1, 2, 2, 3]


def test_reduced_words_examples():
    g = preset("A2")
    assert sorted(g.reduced_words(g.longest_element)) == [(0, 1, 0), (1, 0, 1)]
    assert g.reduced_words(g.identity) == [()]
    assert g.reduced_words(g.simple[0]) == [(0,)]


def test_sign_examples():
    g = preset("A2")
    assert g.sign(g.identity) == 1
    assert g.sign(g.simple[0]) == -1
    assert g.sign(g.longest_element) == -1


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_defining_relations_as_matrices(name):
    g = preset(name)
    for i in range(g.rank):
        assert g.multiply(g.simple[i], g.simple[i]) == g.identity
    for k, l in g.pairs():
        assert g.element_from_word(g.alternating(k, l, 2 * g.m(k, l))) == g.identity


@pytest.mark.parametrize("name", ("A2", "B2", "G2", "I2_5", "A3", "B3"))
def test_reduced_words_multiply_back(name):
    g = preset(name)
    for w in g.elements:
        for word in g.reduced_words(w):
            assert len(word) == w.length
            assert g.element_from_word(word) == w


def test_longest_element_lengths():
    # number of positive roots
    for name, n in {"A2": 3, "B2": 4, "G2": 6, "I2_5": 5, "A3": 6, "B3": 9, "H3": 15}.items():
        assert preset(name).longest_element.length == n


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_parabolic_subgroup_sizes(name):
    g = preset(name)
    for k, l in g.pairs():
        assert len(g.parabolic((k, l))) == 2 * g.m(k, l)


def test_rank2_root_data_a2():
    g = preset("A2")
    a1, a2 = g.root(0), g.root(1)
    data = g.rank2_root_data(0, 1)
    assert data.sequence_k == (a1, a1 + a2, a2)
    assert data.sequence_l == (a2, a1 + a2, a1)
    assert data.delta == a1 * a2 * (a1 + a2)


@pytest.mark.parametrize("name", ("A1xA1", "A2", "B2", "B2_sym", "G2", "G2_sym", "I2_5", "A3", "B3", "H3"))
def test_root_sequences(name):
    g = preset(name)
    for k, l in g.pairs():
        data = g.rank2_root_data(k, l)
        assert set(data.sequence_k) == set(data.sequence_l)
        assert len(set(data.sequence_k)) == data.m == len(data.sequence_k)
        assert data.delta.homogeneous_degree() == data.m
        assert g.positivity_soft_check(k, l, 1e-9)


def test_g2_root_data_integral():
    # a_21 = -3 makes a2 the short root
    g = preset("G2")
    a1, a2 = g.root(0), g.root(1)
    expected = {a1, a2, a1 + a2, a1 + 2 * a2, a1 + 3 * a2, 2 * a1 + 3 * a2}
    assert set(g.rank2_root_data(0, 1).sequence_k) == expected


def test_config_round_trip():
    for name in ("B2", "I2_5", "H3"):
        g = preset(name)
        back = CoxeterGroup.from_config(g.to_config())
        assert back.order == g.order
        assert back.cartan == g.cartan
        assert back.field == g.field
