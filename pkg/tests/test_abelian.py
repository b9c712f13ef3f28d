import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetym.abelian import TRIVIAL, Z, Z2, AbelianGroup, GroupParseError, cyclic
from cosetym.surface_complex import brute_force_quotient_profile, order_profile

small_orders = st.lists(st.integers(1, 12), max_size=4)


def direct_product_profile(orders):
    counts = Counter()
    for x in itertools.product(*(range(m) for m in orders)):
        counts[math.lcm(1, *(m // math.gcd(v, m) for v, m in zip(x, orders)))] += 1
    return dict(sorted(counts.items()))


@pytest.mark.parametrize("text, want", [
    ("0", TRIVIAL), ("trivial", TRIVIAL), ("Z", Z), ("Z2", Z2), ("Z_2", Z2), ("Z/2Z", Z2),
    ("Z^2+Z6", AbelianGroup(2, (6,))), ("Z2 + Z3", AbelianGroup(0, (6,))),
    ("Z2+Z2", AbelianGroup(0, (2, 2))), ("Z1", TRIVIAL),
])
def test_parse(text, want):
    assert AbelianGroup.parse(text) == want


@pytest.mark.parametrize("text", ["Q", "Z2x", "Z^", "Z/2", "2Z"])
def test_parse_rejects(text):
    with pytest.raises(GroupParseError):
        AbelianGroup.parse(text)


def test_invariant_factor_normalization():
    assert AbelianGroup.from_cyclic([4, 6]) == AbelianGroup(0, (2, 12))
    assert AbelianGroup.from_cyclic([2, 3, 5]) == cyclic(30)
    assert AbelianGroup.from_cyclic([0, 1, 2, 0]) == AbelianGroup(2, (2,))


def test_validation():
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        AbelianGroup(-1)


@given(small_orders)
def test_from_cyclic_is_order_independent(orders):
    g = AbelianGroup.from_cyclic(orders)
    assert AbelianGroup.from_cyclic(reversed(orders)) == g
    assert g.order == math.prod(orders)
    assert all(b % a == 0 for a, b in zip(g.torsion, g.torsion[1:]))


@given(small_orders)
@settings(max_examples=40)
def test_normal_form_preserves_isomorphism_type(orders):
    assert order_profile(AbelianGroup.from_cyclic(orders)) == direct_product_profile(orders or [1])


@given(small_orders, st.integers(1, 6))
@settings(max_examples=40)
def test_quotient_matches_brute_force(orders, m):
    g = AbelianGroup.from_cyclic(orders)
    if g.order > 64:
        return
    assert order_profile(g.mod_multiples(m)) == brute_force_quotient_profile(g, m)
    # finite groups: |pi / m pi| = |pi[m]|
    assert g.mod_multiples(m).order == g.m_torsion(m).order


def test_torsion_and_quotient_of_free_part():
    assert Z.mod_multiples(2) == Z2
    assert Z.m_torsion(2) == TRIVIAL
    assert AbelianGroup(1, (4,)).m_torsion(2) == Z2


def test_sum_power_and_labels():
    assert (Z + Z2).label() == "Z + Z2"
    assert Z.power(2).label() == "Z^2"
    assert Z2.power(0) == TRIVIAL
    assert TRIVIAL.label() == "trivial"
    assert str(AbelianGroup(2, (2, 12))) == "Z^2 + Z2 + Z12"
    assert Z.order is None and not Z.is_finite


def test_elements_of_infinite_group():
    with pytest.raises(ValueError):
        list(Z.elements())
