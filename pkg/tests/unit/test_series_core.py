#!/usr/bin/python

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plugins.module_utils.eta_engine import euler_factor, eta_quotient, EtaQuotientSpec
from plugins.module_utils.qseries_errors import InsufficientOrder, LeadingCoefficientNotUnit, ZeroSeries
from plugins.module_utils.series_core import (
    KRONECKER,
    SCHOOLBOOK,
    LaurentSeries,
    add,
    constant,
    equal_up_to,
    from_coefficients,
    invert,
    monomial,
    mul,
    one,
    power,
    reduce_mod,
    shift,
    substitute_qk,
    subtract,
    truncate,
    zero,
)

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def series(draw, unit=False):
    valuation = draw(st.integers(min_value=-3, max_value=3))
    coeffs = draw(st.lists(small_ints, min_size=1, max_size=12))
    if unit:
        coeffs[0] = draw(st.sampled_from([1, -1]))
    return from_coefficients(coeffs, valuation)


def assert_agree(s, t):
    bound = min(s.order, t.order)
    agreement = equal_up_to(s, t, bound)
    assert agreement, agreement


# add

def test_add_cancels():
    s = from_coefficients([1, -1], order=5)
    assert add(s, monomial(1, 1, 5)) == constant(1, 5)


def test_add_zero_is_identity():
    s = from_coefficients([3, 0, -2, 7])
    assert add(zero(10), s) == s


def test_add_aligns_negative_valuations():
    s = add(from_coefficients([1, -1], valuation=-1, order=4), from_coefficients([1, 1], order=4))
    assert s.valuation == -1
    assert s.coefficients(-1, 4) == [1, 0, 1, 0, 0]


def test_subtract_self_is_zero():
    s = from_coefficients([2, 5, -1], valuation=-2)
    assert subtract(s, s).is_zero


# mul

def test_mul_telescopes():
    geometric = from_coefficients([1] * 10)
    assert mul(from_coefficients([1, -1], order=10), geometric) == one(10)


def test_mul_valuations_add():
    assert mul(monomial(-1, 1, 5), monomial(1, 1, 5)) == one(4)


def test_mul_order_is_tightest_bound():
    s = from_coefficients([1, 2, 3], valuation=-2)    # order 1
    t = from_coefficients([1, 1, 1, 1, 1], valuation=0)   # order 5
    assert mul(s, t).order == min(1 + 0, 5 - 2)


def test_square_matches_power():
    f1 = euler_factor(1, 60)
    assert mul(f1, f1) == power(f1, 2)


def test_power_of_f1():
    assert power(euler_factor(1, 6), 2).coefficients(0, 6) == [1, -2, -1, 2, 1, 2]


def test_kronecker_matches_schoolbook_with_large_coefficients():
    s = from_coefficients([3 ** 40, -(2 ** 70), 0, 5, -1] * 20)
    t = from_coefficients([-(7 ** 30), 1, 2 ** 90, 0, -3] * 20, valuation=-4)
    assert mul(s, t, KRONECKER) == mul(s, t, SCHOOLBOOK)


def test_unknown_multiplication_method():
    with pytest.raises(ValueError):
        mul(one(5), one(5), 'fft')


# invert / power

def test_invert_geometric():
    assert invert(from_coefficients([1, -1], order=8)).coefficients(0, 8) == [1] * 8


def test_invert_f1_gives_partition_numbers():
    assert invert(euler_factor(1, 10)).coefficients(0, 10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_invert_negates_valuation():
    a = shift(eta_quotient(EtaQuotientSpec([(1, 1), (2, 1), (9, -1), (18, -1)]), 30), -1)
    assert a.valuation == -1
    assert invert(a).valuation == 1


def test_invert_rejects_non_unit():
    with pytest.raises(LeadingCoefficientNotUnit):
        invert(from_coefficients([2, 1]))


def test_invert_rejects_zero():
    with pytest.raises(ZeroSeries):
        invert(zero(5))


def test_power_zero_is_one():
    s = from_coefficients([-1, 4, 2], valuation=2)
    assert power(s, 0) == one(3)


def test_power_negative_is_involution():
    f1 = euler_factor(1, 40)
    assert power(power(f1, -2), -1) == power(f1, 2)


# substitute_qk

def test_substitute_identity():
    s = from_coefficients([1, 2, 3], valuation=-1)
    assert substitute_qk(s, 1) == s


def test_substitute_relabels_monomials():
    s = substitute_qk(from_coefficients([1, 1]), 3)
    assert s.order == 6
    assert s.coefficients(0, 6) == [1, 0, 0, 1, 0, 0]


def test_substitute_f1_gives_f2():
    assert substitute_qk(euler_factor(1, 20), 2) == euler_factor(2, 40)


def test_substitute_rejects_nonpositive_step():
    with pytest.raises(ValueError):
        substitute_qk(one(3), 0)


# equal_up_to / reduce_mod

def test_equal_up_to_reflexive():
    s = euler_factor(3, 50)
    assert equal_up_to(s, s, s.order)


def test_equal_up_to_boundary():
    s = one(10)
    t = add(one(10), monomial(5, 1, 10))
    assert equal_up_to(s, t, 5)
    agreement = equal_up_to(s, t, 6)
    assert not agreement
    assert (agreement.exponent, agreement.lhs, agreement.rhs) == (5, 0, 1)


def test_equal_up_to_beyond_order():
    with pytest.raises(InsufficientOrder):
        equal_up_to(one(5), one(10), 6)


def test_reduce_mod_to_zero():
    assert reduce_mod(from_coefficients([2, -2]), 2).is_zero


def test_reduce_mod_scalar_multiple():
    s = 7 * eta_quotient(EtaQuotientSpec([(3, 12), (1, -4)]), 100)
    assert reduce_mod(s, 7) == zero(100)


def test_reduce_mod_least_residues():
    assert reduce_mod(from_coefficients([1, -1, 5]), 3).coeffs == (1, 2, 2)


def test_reduce_mod_rejects_small_modulus():
    with pytest.raises(ValueError):
        reduce_mod(one(3), 1)


# representation

def test_zero_canonical_form():
    s = LaurentSeries(-2, [0, 0, 0, 0], 2)
    assert s == zero(2)
    assert s.coeffs == ()
    assert s.valuation == s.order


def test_series_is_immutable():
    s = one(3)
    with pytest.raises(AttributeError):
        s.order = 5


def test_coefficient_beyond_order():
    s = one(3)
    assert s.coefficient(-4) == 0
    with pytest.raises(InsufficientOrder):
        s.coefficient(3)


def test_truncate_cannot_extend():
    with pytest.raises(InsufficientOrder):
        truncate(one(3), 4)


def test_str_shows_truncation():
    assert str(from_coefficients([1, -1, 0, 2])) == "1 - q + 2*q^3 + O(q^4)"


def test_operators_match_functions():
    s = from_coefficients([1, 2, 3])
    t = from_coefficients([1, -1, 1])
    assert s + t == add(s, t)
    assert s * t == mul(s, t)
    assert s - 1 == subtract(s, constant(1, 3))
    assert (1 / t) == invert(t)
    assert t ** -2 == power(t, -2)


# ring laws

@given(series(), series())
def test_mul_commutes(s, t):
    assert mul(s, t) == mul(t, s)


@given(series(), series(), series())
def test_mul_associates(s, t, u):
    assert_agree(mul(mul(s, t), u), mul(s, mul(t, u)))


@given(series(), series(), series())
def test_mul_distributes(s, t, u):
    assert_agree(mul(s, add(t, u)), add(mul(s, t), mul(s, u)))


@given(series(), series())
def test_add_commutes(s, t):
    assert add(s, t) == add(t, s)


@given(series(), series(), series())
def test_add_associates(s, t, u):
    assert add(add(s, t), u) == add(s, add(t, u))


@given(series(unit=True))
def test_mul_by_inverse_is_one(s):
    product = mul(s, invert(s))
    assert equal_up_to(product, one(product.order), product.order)


@given(series(), series(), st.integers(min_value=1, max_value=4))
def test_substitute_is_multiplicative(s, t, k):
    assert_agree(substitute_qk(mul(s, t), k), mul(substitute_qk(s, k), substitute_qk(t, k)))


@given(series(unit=True), st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3))
def test_power_adds_exponents(s, a, b):
    assert_agree(power(s, a + b), mul(power(s, a), power(s, b)))


@settings(max_examples=50)
@given(series(), series())
def test_kronecker_is_bit_identical(s, t):
    assert mul(s, t, KRONECKER) == mul(s, t, SCHOOLBOOK)


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(min_value=1, max_value=12), st.integers(min_value=-3, max_value=3)),
                max_size=4),
       st.integers(min_value=5, max_value=60))
def test_recomputation_agrees_with_truncation(factors, order):
    spec = EtaQuotientSpec(factors)
    assert truncate(eta_quotient(spec, order + 17), order) == eta_quotient(spec, order)
