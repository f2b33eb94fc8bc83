from __future__ import annotations

import json

import pytest

from nilhecke.equivariant import (
    FIXTURE_NAMES,
    DescentFailure,
    GOperator,
    ModuleError,
    NotAnActionError,
    analyze,
    braid_check,
    descent_check,
    load_fixture,
    load_module_file,
    module_make,
    twisted_trivial_module,
    universal_descent,
)
from nilhecke.poly import NotDivisibleError
from nilhecke.presets import preset
from nilhecke.randomized import random_polynomial, rng


def rank1(entry):
    return module_make({"group": "A1", "generators": [{"name": "e", "degree": 0}],
                        "action": {"1": [[entry]]}})


def test_rank1_trivial_descends_to_zero_operator():
    m = rank1("1")
    op = descent_check(m, 0)
    assert isinstance(op, GOperator)
    assert op.matrix == ((m.group.poly(0),),)


def test_rank1_sign_fails_with_witness_two():
    m = rank1("-1")
    failure = descent_check(m, 0)
    assert isinstance(failure, DescentFailure)
    assert not failure
    assert failure.remainder == 2


def test_rank1_engineered_twist_descends():
    g = preset("A1")
    # basis e'_2 = a1 e_1 + e_2 over the trivial module; S is not constant
    m = twisted_trivial_module(g, [0, 1], [[1, "a1"], [0, 1]])
    assert any(not x.is_constant() for row in m.actions[0] for x in row)
    op = descent_check(m, 0)
    assert op
    for a in range(m.size):
        e = m.basis_vector(a)
        assert op.apply(e) == universal_descent(m, 0, e)


def test_a2_one_generator_identity_module():
    m = module_make({"group": "A2", "generators": [{"name": "e", "degree": 0}],
                     "action": {"1": [["1"]], "2": [["1"]]}})
    assert braid_check(m, 0, 1).ok


def test_not_an_action():
    with pytest.raises(NotAnActionError):
        rank1("2")
    with pytest.raises(NotAnActionError):
        # s1 = -1, s2 = 1 gives (s1 s2)^3 = -1 on the generator
        module_make({"group": "A2", "generators": [{"name": "e", "degree": 0}],
                     "action": {"1": [["-1"]], "2": [["1"]]}})


def test_bad_shape_rejected():
    with pytest.raises(ModuleError):
        module_make({"group": "A1", "generators": [{"name": "e", "degree": 0}],
                     "action": {"1": [["1", "0"]]}})


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_theorem(name):
    report = analyze(load_fixture(name), name)
    assert report.ok
    if report.descends_everywhere:
        assert len(report.braids) == len(report.descends) * (len(report.descends) - 1) // 2
        assert all(b.ok for b in report.braids)


def test_expected_fixture_outcomes():
    descends = {n: analyze(load_fixture(n), n).descends_everywhere for n in FIXTURE_NAMES}
    assert not descends["a1_sign"]
    assert not descends["a2_sign"]
    assert not descends["a2_regular"]
    assert not descends["a1xa1_mixed"]
    for n in ("a1_trivial", "a1_twisted", "a2_trivial", "a2_twisted", "b2_twisted",
              "g2_twisted", "i2_5_twisted", "a3_twisted", "h3_trivial"):
        assert descends[n], n


def test_regular_module_witness():
    failure = analyze(load_fixture("a2_regular")).descends[0]
    assert not failure
    assert failure.remainder.is_constant()


@pytest.mark.parametrize("name", ("a1_twisted", "a2_twisted", "b2_twisted", "i2_5_twisted", "a3_twisted"))
def test_descending_modules_carry_hecke_structure(name):
    m = load_fixture(name)
    g = m.group
    r = rng(f"module:{name}")
    ops = {i: descent_check(m, i) for i in range(g.rank)}
    for i, op in ops.items():
        for a in range(m.size):
            e = m.basis_vector(a)
            # nil relation on generators
            assert all(not x for x in op.apply(op.apply(e)))
    for _ in range(10):
        vec = tuple(random_polynomial(r, g, max_degree=4, max_terms=2) for _ in range(m.size))
        i = r.randrange(g.rank)
        # Leibniz extension agrees with the direct (1 - s_i)/a_i
        assert ops[i].apply(vec) == universal_descent(m, i, vec)


@pytest.mark.parametrize("name", FIXTURE_NAMES[:10])
def test_generator_criterion_matches_universal(name):
    m = load_fixture(name)
    g = m.group
    r = rng(f"universal:{name}")
    for i in range(g.rank):
        op = descent_check(m, i)
        if op:
            for _ in range(5):
                vec = tuple(random_polynomial(r, g, max_degree=4, max_terms=2) for _ in range(m.size))
                universal_descent(m, i, vec)  # divisible, must not raise
        else:
            with pytest.raises(NotDivisibleError):
                universal_descent(m, i, m.basis_vector(op.generator))


def test_braid_check_requires_descent():
    with pytest.raises(ModuleError):
        braid_check(load_fixture("a2_sign"), 0, 1)


def test_module_file_round_trip(tmp_path):
    m = load_fixture("b2_twisted")
    path = tmp_path / "m.json"
    path.write_text(json.dumps(m.to_config()))
    back = load_module_file(path)
    assert back.actions == m.actions
    assert back.degrees == m.degrees
