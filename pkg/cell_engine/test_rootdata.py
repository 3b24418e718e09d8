"""
Tests for the root data module.
Checks root closure, ρ, Coxeter relations and the finite Weyl group of every
supported type.
"""
import json
from fractions import Fraction

import pytest

from rootdata import (
    UnsupportedTypeError,
    build_root_datum,
    dot_action,
    enumerate_weyl,
    fundamental_from_weight,
    parse_type,
    supported_types,
    weight_from_fundamental,
    weyl_multiply,
)

EXPECTED = {
    "A1": (1, 2, 2, (1,)),
    "A2": (3, 3, 6, (1, 2)),
    "A3": (6, 4, 24, (1, 2, 3)),
    "B2": (4, 4, 8, (1, 3)),
    "B3": (9, 6, 48, (1, 3, 5)),
    "C3": (9, 6, 48, (1, 3, 5)),
    "G2": (6, 6, 12, (1, 5)),
}


def all_data():
    return [build_root_datum(*parse_type(name)) for name in supported_types()]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_counts(name):
    datum = build_root_datum(*parse_type(name))
    n, h, order, exponents = EXPECTED[name]
    assert datum.N == n
    assert datum.h == h
    assert datum.weyl_order == order
    assert len(enumerate_weyl(datum)) == order
    assert datum.exponents == exponents
    # |W| is the product of the e_i + 1
    product = 1
    for e in exponents:
        product *= e + 1
    assert product == order


def test_a1_rho():
    datum = build_root_datum("A", 1)
    assert datum.rho == (Fraction(1, 2),)
    assert datum.N == 1


def test_unsupported_type():
    with pytest.raises(UnsupportedTypeError) as excinfo:
        build_root_datum("E", 8)
    assert "A1" in str(excinfo.value)
    with pytest.raises(UnsupportedTypeError):
        parse_type("X")


def test_positive_roots_sorted_and_sum_to_two_rho():
    for datum in all_data():
        assert list(datum.positive_roots) == sorted(datum.positive_roots)
        total = [sum(r[j] for r in datum.positive_roots) for j in range(datum.rank)]
        assert total == [2 * c for c in datum.rho]


def test_rho_pairs_to_one():
    for datum in all_data():
        for i in range(datum.rank):
            assert datum.pair_simple(datum.rho, i) == 1


def test_symmetrizer_and_highest_roots():
    assert build_root_datum("B", 2).symmetrizer == (2, 1)
    assert build_root_datum("C", 3).symmetrizer == (1, 1, 2)
    g2 = build_root_datum("G", 2)
    assert g2.symmetrizer == (1, 3)
    assert g2.positive_roots[g2.highest_root] == (3, 2)
    assert g2.positive_roots[g2.highest_short_root] == (2, 1)
    b2 = build_root_datum("B", 2)
    assert b2.positive_roots[b2.highest_short_root] == (1, 1)


def test_coroots_pair_to_two():
    for datum in all_data():
        for r, beta in enumerate(datum.positive_roots):
            assert datum.pair(beta, r) == 2


def test_coxeter_relations():
    orders = {0: 2, 1: 3, 2: 4, 3: 6}
    for datum in all_data():
        for i in range(1, datum.rank + 1):
            for j in range(i + 1, datum.rank + 1):
                product = weyl_multiply(datum, datum.simple_reflection(i), datum.simple_reflection(j))
                m = orders[datum.cartan[i - 1][j - 1] * datum.cartan[j - 1][i - 1]]
                power = datum.identity
                for _ in range(m):
                    power = weyl_multiply(datum, power, product)
                assert power == datum.identity
                power = datum.identity
                for _ in range(m - 1):
                    power = weyl_multiply(datum, power, product)
                assert power != datum.identity


def test_weyl_group_closed_and_longest_unique():
    for datum in all_data():
        group = set(datum.weyl_group)
        if datum.weyl_order <= 12:
            for a in datum.weyl_group:
                for b in datum.weyl_group:
                    assert weyl_multiply(datum, a, b) in group
        longest = [w for w in datum.weyl_group if w.length == datum.N]
        assert len(longest) == 1
        assert datum.longest.length == datum.N
        assert len(datum.negated_roots(datum.longest)) == datum.N
        for w in datum.weyl_group:
            assert any(weyl_multiply(datum, w, u) == datum.identity for u in datum.weyl_group)
            assert len(datum.negated_roots(w)) == w.length


def test_dot_action_examples():
    a1 = build_root_datum("A", 1)
    s = a1.simple_reflection(1)
    assert dot_action(a1, s, (0,)) == (-1,)
    for datum in all_data():
        minus_rho = tuple(-c for c in datum.rho)
        lam = tuple(Fraction(k) for k in range(datum.rank))
        assert dot_action(datum, datum.identity, lam) == lam
        for w in datum.weyl_group:
            assert dot_action(datum, w, minus_rho) == minus_rho


def test_weight_conversion():
    for datum in all_data():
        coords = tuple(range(1, datum.rank + 1))
        assert fundamental_from_weight(datum, weight_from_fundamental(datum, coords)) == coords
        assert weight_from_fundamental(datum, (1,) * datum.rank) == datum.rho


def test_to_dict_is_json():
    datum = build_root_datum("G", 2)
    payload = json.loads(json.dumps(datum.to_dict()))
    assert payload["type"] == "G2"
    assert payload["N"] == 6
    assert len(payload["positive_roots"]) == 6
