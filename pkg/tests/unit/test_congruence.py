#!/usr/bin/python

from unittest.mock import MagicMock

import pytest

from plugins.module_utils.claim_report import ERROR, FAIL, PASS
from plugins.module_utils.congruence import (
    INTERNAL,
    KNOWN,
    KNOWN_CONGRUENCES,
    VERIFIED_TO_ORDER,
    CongruenceClaim,
    CongruenceVerifier,
    SeriesCache,
    builtin_series,
    catalog_entry,
    closed_form_coefficient,
    implied_by_known,
    is_builtin,
    recursive_coefficient,
)
from plugins.module_utils.eta_engine import EtaQuotientSpec
from plugins.module_utils.qseries_errors import InsufficientOrder, ResidueOutOfRange, UnknownSeries
from plugins.module_utils.series_core import from_coefficients

CP3_CONGRUENCES = [claim for claim in KNOWN_CONGRUENCES
                   if claim.series_name == 'CP3' and claim.step in (8, 24)]


@pytest.fixture
def verifier(series_cache):
    return CongruenceVerifier(series_cache)


# catalog

def test_catalog_values():
    assert builtin_series('CP3', 6).coefficients() == [1, 2, 7, 8, 23, 24]
    assert builtin_series('DQ', 3).coefficients() == [1, -2, -3]
    assert builtin_series('P', 10).coefficient(9) == 30


def test_catalog_core_names():
    assert catalog_entry('CORE5').spec == EtaQuotientSpec([(5, 5), (1, -1)])
    assert catalog_entry('CORE3').spec == EtaQuotientSpec([(3, 3), (1, -1)])
    assert is_builtin('CORE7')
    assert not is_builtin('CORE1')


def test_catalog_unknown_name():
    with pytest.raises(UnknownSeries):
        catalog_entry('NOPE')


def test_series_cache_truncates_lower_orders():
    expand = MagicMock(side_effect=builtin_series)
    cache = SeriesCache(expand)

    cache.get('P', 50)
    low = cache.get('P', 20)
    assert expand.call_count == 1
    assert low == builtin_series('P', 20)
    assert 'P' in cache

    cache.get('P', 80)
    assert expand.call_count == 2
    cache.clear()
    assert 'P' not in cache


# claims

def test_claim_validation():
    with pytest.raises(ResidueOutOfRange):
        CongruenceClaim('CP3', 8, 8, 2)
    with pytest.raises(ValueError):
        CongruenceClaim('CP3', 8, 3, 1)
    with pytest.raises(ValueError):
        CongruenceClaim('CP3', 3, 1, 2, kind=INTERNAL, other_step=1, other_offset=-2)


def test_claim_describe():
    assert CongruenceClaim('CP3', 8, 3, 8).describe() == "CP3(8n+3) == 0 mod 8"
    internal = CongruenceClaim('CP3', 3, 1, 2, kind=INTERNAL, other_step=1, other_offset=-1)
    assert internal.describe() == "CP3(3n+1) == CP3(1n-1) mod 2"


@pytest.mark.parametrize('claim', KNOWN_CONGRUENCES, ids=lambda claim: claim.label)
def test_known_congruences_hold(verifier, claim):
    result = verifier.verify(claim, 2000)
    assert result.status == PASS, result
    assert result.checked >= 10


@pytest.mark.parametrize('claim', CP3_CONGRUENCES, ids=lambda claim: claim.label)
def test_cp3_congruences_have_many_witnesses(verifier, claim):
    assert verifier.verify(claim, 2000).checked >= 80


def test_mod_8_strengthening_fails_with_witness(verifier):
    result = verifier.verify(CongruenceClaim('CP3', 24, 13, 8), 2000)
    assert result.status == FAIL
    assert result.witness is not None
    assert result.witness.lhs % 8 != 0
    assert result.checked == result.witness.index + 1


def test_congruence_on_explicit_series(verifier):
    series = from_coefficients([3, 1, 6, 1, 9, 1] * 5)
    assert verifier.verify(CongruenceClaim(series, 2, 0, 3), 30).passed
    assert not verifier.verify(CongruenceClaim(series, 2, 1, 3), 30).passed


def test_congruence_needs_witnesses(verifier):
    with pytest.raises(InsufficientOrder):
        verifier.verify(CongruenceClaim('CP3', 24, 23, 96), 100)


@pytest.mark.parametrize('k', [1, 2, 3, 4])
def test_parity_internal_congruences(verifier, k):
    step = 3 ** k
    claim = CongruenceClaim('CP3', step, step - 2, 2, kind=INTERNAL, other_step=1, other_offset=-1)
    assert verifier.verify(claim, 2000).status == PASS


def test_internal_treats_negative_index_as_zero(verifier):
    # at n = 0, a(1) is compared with a(-1) = 0
    even = from_coefficients([1, 2] * 16)
    claim = CongruenceClaim(even, 1, 1, 2, kind=INTERNAL, other_step=1, other_offset=-1)
    assert verifier.verify_internal(claim, 32).status == PASS

    odd = from_coefficients([1, 3] * 16)
    claim = CongruenceClaim(odd, 1, 1, 2, kind=INTERNAL, other_step=1, other_offset=-1)
    result = verifier.verify_internal(claim, 32)
    assert result.status == FAIL
    assert (result.witness.index, result.witness.lhs, result.witness.rhs) == (0, 3, 0)


def test_cor34_family(verifier):
    results = verifier.verify_cor34(4, 2000)
    assert len(results) == 4
    assert all(result.passed for result in results)


# powers of 3

@pytest.mark.parametrize('k', range(1, 11))
def test_closed_form_matches_recursion(k):
    assert closed_form_coefficient(k) == recursive_coefficient(k)


def test_closed_form_values():
    assert closed_form_coefficient(1) == 2
    assert closed_form_coefficient(2) == 48


def test_closed_form_rejects_zero():
    with pytest.raises(ValueError):
        closed_form_coefficient(0)


def test_thm39_chain_passes(verifier):
    results = verifier.verify_thm39_chain(4, 2000)
    assert all(result.status == PASS for result in results), [r for r in results if not r.passed]
    labels = [result.label for result in results]
    assert "CP3(3n+1) = 2d(n) + 27CP3(n-1)" in labels
    assert "d(3n+2) = -3d(n)" in labels
    assert "k=4: CP3(162n+79) == 0 mod 54" in labels
    assert not any(label.startswith("k=1") and "mod 1" in label for label in labels)


def test_thm39_chain_covers_600_indices(verifier):
    results = {result.label: result for result in verifier.verify_thm39_chain(1, 2000)}
    assert results["CP3(3n+1) = 2d(n) + 27CP3(n-1)"].checked > 600
    assert results["d(3n+2) = -3d(n)"].checked > 600


def test_thm39_chain_reports_too_low_order(verifier):
    results = verifier.verify_thm39_chain(4, 200)
    assert any(result.status == ERROR for result in results)


def test_thm39_chain_rejects_kmax():
    with pytest.raises(ValueError):
        CongruenceVerifier().verify_thm39_chain(0)


# scanner

def test_implied_by_known():
    assert implied_by_known('CP3', 16, 3, 8)
    assert implied_by_known('CP3', 48, 35, 8)
    assert not implied_by_known('CP3', 8, 3, 16)
    assert not implied_by_known('P', 8, 3, 8)


def test_implied_by_several_known():
    # 12n+11 splits into 24n+11 (mod 48) and 24n+23 (mod 96)
    assert implied_by_known('CP3', 12, 11, 48)
    assert not implied_by_known('CP3', 12, 11, 96)
    assert implied_by_known('CP3', 4, 3, 8)
    halves = [CongruenceClaim('P', 10, 4, 5), CongruenceClaim('P', 10, 9, 5)]
    assert implied_by_known('P', 5, 4, 5, known=halves)
    assert not implied_by_known('P', 5, 4, 5, known=halves[:1])


def test_scan_tags_combined_congruence_as_known(verifier):
    hits = {hit.key(): hit for hit in verifier.scan_congruences('CP3', 12, [48], 2000)}
    assert hits[(12, 11, 48)].status == KNOWN


def test_scan_finds_mod_8_and_mod_16(verifier):
    hits = verifier.scan_congruences('CP3', 8, [2, 4, 8, 16], 2000)
    keys = [hit.key() for hit in hits]
    assert (8, 3, 8) in keys
    assert (8, 7, 16) in keys
    assert (8, 3, 4) not in keys
    assert keys == sorted(keys)


def test_scan_finds_mod_48_and_mod_96(verifier):
    keys = [hit.key() for hit in verifier.scan_congruences('CP3', 24, [48, 96], 2000)]
    assert (24, 11, 48) in keys
    assert (24, 23, 96) in keys


def test_scan_rediscovers_cp3_congruences(verifier):
    hits = verifier.scan_congruences('CP3', 24, [4, 8, 16, 48, 96], 2000)
    for claim in CP3_CONGRUENCES:
        assert any(hit.step == claim.step and hit.offset == claim.offset and hit.modulus % claim.modulus == 0
                   for hit in hits), claim.label
    for hit in hits:
        assert hit.status in (KNOWN, VERIFIED_TO_ORDER)
        assert (hit.status == KNOWN) == implied_by_known('CP3', hit.step, hit.offset, hit.modulus)


def test_scan_partitions(verifier):
    hits = {hit.key(): hit for hit in verifier.scan_congruences('P', 5, [5], 500)}
    assert (5, 4, 5) in hits
    assert hits[(5, 4, 5)].to_dict() == {
        'series': 'P', 'step': 5, 'offset': 4, 'modulus': 5, 'checked': 100, 'status': KNOWN,
    }


def test_scan_needs_order(verifier):
    with pytest.raises(InsufficientOrder):
        verifier.scan_congruences('CP3', 24, [2], 400)
