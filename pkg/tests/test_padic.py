from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zetalg.padic import (
    INF,
    format_p_adic,
    parse_p_adic,
    prime_factors,
    reduce_mod,
    unit_generators,
    unit_part,
    valuation,
)


@pytest.mark.parametrize(
    "x, p, v",
    [(8, 2, 3), (Fraction(3, 4), 2, -2), (Fraction(9, 5), 3, 2), (7, 5, 0), (0, 3, INF)],
)
def test_valuation(x, p, v):
    assert valuation(x, p) == v


def test_unit_part_is_a_unit():
    assert unit_part(Fraction(12, 5), 2) == Fraction(3, 5)


@pytest.mark.parametrize("p", [2, 3, 5])
@given(num=st.integers(-10**6, 10**6), den=st.integers(1, 10**4), a=st.integers(-3, 6))
def test_reduce_mod_is_congruent_and_in_range(p, num, den, a):
    x = Fraction(num, den)
    if valuation(Fraction(den), p) > 0:
        return
    y = reduce_mod(x, p, a)
    assert y == 0 or 0 <= y < Fraction(p) ** a
    diff = x - y
    assert diff == 0 or valuation(diff, p) >= a


@given(num=st.integers(-10**9, 10**9), e=st.integers(0, 8))
def test_format_parse_round_trip(num, e):
    x = Fraction(num, 3**e)
    assert parse_p_adic(format_p_adic(x, 3)) == x


def test_prime_factors():
    assert prime_factors(900) == [2, 3, 5]
    assert prime_factors(1) == []


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_unit_generator_has_full_order_mod_p_squared(p):
    (g,) = unit_generators(p)
    seen = {pow(g, k, p * p) for k in range(p * (p - 1))}
    assert len(seen) == p * (p - 1)


def test_units_at_two():
    gens = unit_generators(2)
    group = {1}
    for _ in range(4):
        group |= {(x * g) % 16 for x in group for g in gens}
    assert group == {1, 3, 5, 7, 9, 11, 13, 15}
