#!/usr/bin/python

import pytest

from plugins.module_utils.claim_parser import parse
from plugins.module_utils.claim_report import ERROR, FAIL, PASS
from plugins.module_utils.claim_runner import ClaimRunner


def read(path):
    with open(path, encoding='utf-8') as handle:
        return parse(handle.read())


def test_corpus_passes(series_cache, corpus_path):
    claim_file = read(corpus_path('cp3_claims.qid'))
    report = ClaimRunner(cache=series_cache).run(claim_file)

    failing = [claim for claim in report.claims if not claim.passed]
    assert failing == []
    assert report.passed
    assert [claim.label for claim in report.claims] == claim_file.labels
    assert report.order == 2000


def test_corpus_congruences_use_congruence_order(series_cache, corpus_path):
    report = ClaimRunner(cache=series_cache).run(read(corpus_path('cp3_claims.qid')))
    for claim in report.claims:
        expected = 2000 if claim.kind in ('congruence', 'internal') else 500
        assert claim.order == expected


def test_negative_controls_fail(series_cache, corpus_path):
    report = ClaimRunner(cache=series_cache).run(read(corpus_path('negative_controls.qid')))

    assert not report.passed
    assert report.totals() == {PASS: 0, FAIL: 5, ERROR: 0}
    for claim in report.claims:
        assert claim.witness is not None
    identities = [claim for claim in report.claims if claim.kind == 'identity']
    assert all(claim.witness.index <= 5 for claim in identities)


def test_one_sabotaged_sign():
    text = '''
identity "f1^4": f1^4 == f4^10/(f2^2*f8^4) - 4*q*f2^2*f8^4/f4^2
identity "f1^4 sabotaged": f1^4 == f4^10/(f2^2*f8^4) + 4*q*f2^2*f8^4/f4^2
'''
    report = ClaimRunner().run(parse(text), 100)
    assert [claim.status for claim in report.claims] == [PASS, FAIL]
    assert report.summary() == "2 claims: 1 passed, 1 failed, 0 errors"


def test_empty_file():
    report = ClaimRunner().run(parse(''))
    assert report.claims == []
    assert report.passed


def test_errors_do_not_stop_the_suite():
    text = '''
identity "laurent extract": extract(q^-1*f1, 2, 0) == f1
congruence "too few indices": CP3[24*n+23] == 0 mod 96
identity "fine": f1*(1/f1) == 1
'''
    report = ClaimRunner().run(parse(text), 100)
    assert [claim.status for claim in report.claims] == [ERROR, ERROR, PASS]
    assert 'valuation' in report.claims[0].message


def test_congruence_on_defined_series():
    text = '''
series T = 5*f1^3
congruence "all of T": T[n] == 0 mod 5
internal "T against itself": T[2*n] == T[2*n] mod 3
'''
    report = ClaimRunner(congruence_order=200).run(parse(text))
    assert report.passed
    assert report.claims[0].checked == 200


def test_workers_keep_file_order(series_cache):
    text = '\n'.join(
        f'identity "f{m} is f1 at q^{m}": f{m} == subst(f1, {m})' for m in range(1, 9)
    ) + '\ncongruence "p mod 5": P[5*n+4] == 0 mod 5\n'
    claim_file = parse(text)
    report = ClaimRunner(workers=4, cache=series_cache).run(claim_file, 300)
    assert [claim.label for claim in report.claims] == claim_file.labels
    assert report.passed


def test_report_json_uses_decimal_strings():
    text = 'identity "big": 3^40*f1 == 3^40*f1 + q\n'
    report = ClaimRunner().run(parse(text), 10)
    document = report.to_dict()
    claim = document['claims'][0]
    assert document['passed'] is False
    assert claim['witness'] == {'index': '1', 'lhs': str(-3 ** 40), 'rhs': str(1 - 3 ** 40)}


def test_report_json_counts_are_decimal_strings():
    report = ClaimRunner().run(parse('identity "f1": f1 == f1\n'), 30)
    document = report.to_dict()
    assert document['order'] == '30'
    assert document['claims'][0]['checked'] == '30'
    assert document['claims'][0]['order'] == '30'


def test_report_order_is_highest_claim_order(series_cache):
    text = '''
identity "f1": f1 == f1
congruence "mod 8": CP3[8*n+3] == 0 mod 8
'''
    report = ClaimRunner(cache=series_cache).run(parse(text))
    assert [claim.order for claim in report.claims] == [500, 2000]
    assert report.order == 2000

    identities_only = ClaimRunner().run(parse('identity "f1": f1 == f1\n'))
    assert identities_only.order == 500


def test_cor34_family(series_cache):
    report = ClaimRunner(cache=series_cache).run_family('cor34', 4)
    assert report.order == 2000
    assert len(report.claims) == 4
    assert report.passed


def test_thm39_family(series_cache):
    report = ClaimRunner(cache=series_cache).run_family('thm39', 3, 2000)
    labels = [claim.label for claim in report.claims]
    assert "H3(a^4) = 32/b^3 + 1 - 4b^3" in labels
    assert "cubic continued fraction depth stability" in labels
    assert report.passed, [claim for claim in report.claims if not claim.passed]


def test_unknown_family():
    with pytest.raises(ValueError):
        ClaimRunner().run_family('cor35', 2)
