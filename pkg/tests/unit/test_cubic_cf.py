#!/usr/bin/python

from unittest.mock import MagicMock

import pytest

from plugins.module_utils.claim_report import PASS
from plugins.module_utils.cubic_cf import (
    CF_DEPTH_PADDING,
    CubicContinuedFraction,
    build_thm39_triple,
    cubic_cf_series,
    verify_h3_images,
)
from plugins.module_utils.qseries_errors import RelationFailure
from plugins.module_utils.series_core import add, constant, equal_up_to, mul, scale


def test_cf_leading_coefficients():
    cf = cubic_cf_series(4)
    assert cf.x.coefficients() == [1, -1, 0, 2]
    assert cf.depth == 4 + CF_DEPTH_PADDING


def test_cf_constant_term():
    assert cubic_cf_series(20).x.coefficient(0) == 1


def test_cf_depth_stability():
    assert CubicContinuedFraction().check_depth(60)


def test_cf_too_shallow_differs():
    # cutting the fraction at depth 1 changes the q^3 coefficient
    shallow = cubic_cf_series(10, depth=1)
    assert not equal_up_to(shallow.x, cubic_cf_series(10).x, 10)


def test_cf_rejects_bad_order():
    with pytest.raises(ValueError):
        cubic_cf_series(0)


def test_x_of_q3_lives_on_multiples_of_three():
    x3 = CubicContinuedFraction().x_of_q3(30)
    assert x3.order == 30
    assert all(exponent % 3 == 0 for exponent, _ in x3.items())


def test_lemma_identities_pass():
    debug = MagicMock()
    results = CubicContinuedFraction(debug).verify_lemma(100)
    assert len(results) == 3
    assert all(result.status == PASS for result in results), results
    debug.assert_called()


def test_triple_relations():
    triple = build_thm39_triple(60)
    a, c = triple.a, triple.c
    assert a.valuation == -1
    assert triple.b.valuation == -1
    assert c.valuation == -3
    a2 = mul(a, a)
    cubic = add(add(mul(a2, a), scale(a2, 3)), scale(a, 9))
    assert equal_up_to(c, cubic, 60)


def test_relations_pass():
    results = CubicContinuedFraction().verify_relations(100)
    assert len(results) == 7
    assert all(result.passed for result in results), results


def test_h3_images_pass():
    results = verify_h3_images(100)
    assert [result.label for result in results][:3] == ["H3(1) = 1", "H3(a) = -1", "H3(a^2) = -3"]
    assert len(results) == 6
    assert all(result.passed for result in results), results


def test_build_triple_detects_broken_relation(mocker):
    cf = CubicContinuedFraction()
    mocker.patch.object(
        cf,
        'relations',
        return_value=[("1 = 2", constant(1, 20), constant(2, 20))]
    )

    with pytest.raises(RelationFailure) as info:
        cf.build_triple(10)
    assert info.value.relation == "1 = 2"
    assert info.value.witness.exponent == 0
