from __future__ import annotations

import json
from fractions import Fraction

import pytest

from src.certify import (
    ASSUMED,
    NON_SPLIT,
    VERIFIED,
    Certificate,
    CertificateKind,
    Refusal,
    asymptotic_check,
    bounds_consistent,
    first_condition_indicators,
    good_certificate,
    kauffman_lower_bound,
    verify_certificate,
)
from src.errors import PreconditionError
from src.laurent import LaurentPoly
from src.statesum import span_report


def _premise_status(cert: Certificate):
    return {p.name: p.status for p in cert.premises}


def test_trefoil_pipeline(named):
    d = named("trefoil")
    span_cert = kauffman_lower_bound(d)
    assert isinstance(span_cert, Certificate)
    assert span_cert.kind is CertificateKind.SPAN_LOWER_BOUND
    assert span_cert.lower_bound == 3
    assert span_cert.evidence["span"] == 12

    cert = good_certificate(d)
    assert isinstance(cert, Certificate)
    assert cert.kind is CertificateKind.GOOD_CLASSICAL_KNOT
    assert cert.lower_bound == 3
    assert not cert.vacuous
    assert "classical" in cert.scope
    assert _premise_status(cert)[NON_SPLIT] == ASSUMED
    assert all(p.holds for p in cert.premises)
    assert cert.evidence["chi"] == 2 and cert.evidence["carter_genus"] == 0
    assert cert.evidence["lemma"]["implied_thickness_lower_bound"] == 2
    assert bounds_consistent(span_cert, cert)


def test_unknot_bound_is_zero(named):
    cert = kauffman_lower_bound(named("unknot"))
    assert cert.lower_bound == 0
    assert cert.evidence["span"] == 0


def test_kink_refused_at_crossing_one(named):
    result = good_certificate(named("kink"))
    assert isinstance(result, Refusal)
    assert "not good" in result.reason
    assert result.details["b_violations"] == [1]
    assert result.details["a_violations"] == []


def test_virtual_trefoil_refused(named):
    result = good_certificate(named("virtual_trefoil"))
    assert isinstance(result, Refusal)
    with pytest.raises(PreconditionError):
        asymptotic_check(named("virtual_trefoil"))


def test_link_input_refused_by_asymptotic_check(named):
    with pytest.raises(PreconditionError):
        asymptotic_check(named("hopf"))


def test_split_diagram_refused(named):
    assert isinstance(kauffman_lower_bound(named("split_kinks")), Refusal)


def test_zero_bracket_gives_no_span_certificate(named):
    report = span_report(named("trefoil"), poly=LaurentPoly())
    result = kauffman_lower_bound(named("trefoil"), report=report)
    assert isinstance(result, Refusal)
    assert "zero" in result.reason


def test_hopf_is_vacuous_good_virtual(named):
    cert = good_certificate(named("hopf"))
    assert cert.kind is CertificateKind.GOOD_VIRTUAL
    assert cert.lower_bound == 0
    assert cert.vacuous


def test_good_virtual_five_crossings(good_virtual_5):
    cert = good_certificate(good_virtual_5)
    assert isinstance(cert, Certificate)
    assert cert.kind is CertificateKind.GOOD_VIRTUAL
    assert cert.lower_bound == 3
    assert not cert.vacuous
    assert cert.evidence["span"] == cert.evidence["bound"] == 16
    assert cert.evidence["chi"] == 0
    assert verify_certificate(cert.to_dict(), good_virtual_5).ok


def test_certificates_round_trip_and_verify(named, trefoil_sum):
    for d in (named("trefoil"), named("figure_eight"), trefoil_sum):
        for cert in (kauffman_lower_bound(d), good_certificate(d)):
            data = json.loads(json.dumps(cert.to_dict()))
            assert Certificate.from_dict(data) == Certificate.from_dict(cert.to_dict())
            result = verify_certificate(data, d)
            assert result.ok, result.failures


def test_tampered_certificate_fails_verification(named):
    d = named("trefoil")
    data = good_certificate(d).to_dict()
    data["lower_bound"] = 4
    result = verify_certificate(data, d)
    assert not result.ok

    data = good_certificate(d).to_dict()
    for premise in data["premises"]:
        if premise["status"] == VERIFIED:
            premise["name"] = "made up"
            break
    assert not verify_certificate(data, d).ok


def test_certificate_checked_against_other_diagram(named):
    data = good_certificate(named("trefoil")).to_dict()
    assert not verify_certificate(data, named("kink")).ok


def test_bounds_never_exceed_own_crossings(good_corpus):
    for d in good_corpus:
        span_cert = kauffman_lower_bound(d)
        cert = good_certificate(d)
        for result in (span_cert, cert):
            if isinstance(result, Certificate):
                assert result.lower_bound <= d.n
        # the span bound often beats n - 2, so only classical knots must agree
        if isinstance(cert, Certificate) and cert.kind is CertificateKind.GOOD_CLASSICAL_KNOT:
            assert bounds_consistent(span_cert, cert) is True


def test_asymptotic_trefoil_m1(named):
    report = asymptotic_check(named("trefoil"), epsilon=Fraction(1), ms=[1])
    (entry,) = report.entries
    assert report.n == 6 and report.chi == 2
    assert entry.crossings == 6
    assert entry.span == 24
    assert entry.threshold == 18
    assert entry.usual_estimate == 24
    assert entry.passed

    cert = report.certificate()
    assert cert.kind is CertificateKind.ASYMPTOTIC_EVIDENCE
    assert cert.lower_bound == 0 and cert.vacuous
    assert "FINITE EVIDENCE" in cert.scope
    assert verify_certificate(cert.to_dict(), named("trefoil")).ok


def test_asymptotic_epsilon_near_four(named):
    report = asymptotic_check(named("trefoil"), epsilon=Fraction(399, 100), ms=[1])
    (entry,) = report.entries
    assert entry.threshold == 24 - Fraction(2, 100)
    assert entry.passed


def test_asymptotic_rejects_bad_parameters(named):
    with pytest.raises(PreconditionError):
        asymptotic_check(named("trefoil"), epsilon=Fraction(0))
    with pytest.raises(PreconditionError):
        asymptotic_check(named("trefoil"), ms=[0])


@pytest.mark.slow
def test_asymptotic_trefoil_m2(named):
    report = asymptotic_check(named("trefoil"), epsilon=Fraction(1), ms=[1, 2], threads=4)
    second = report.entries[1]
    assert second.crossings == 24
    assert second.threshold == 58
    assert second.span == 76
    assert report.all_passed


@pytest.mark.slow
def test_cable_span_certificate(trefoil_sum):
    from src.cabling import cable

    cert = kauffman_lower_bound(cable(trefoil_sum, 2), guard=None, threads=4)
    assert cert.lower_bound == 19


def test_first_condition_indicators(named):
    ind = first_condition_indicators(named("trefoil"))
    assert ind.span_attained is True
    assert ind.genus == 0 and ind.carter_genus == 0
    assert first_condition_indicators(named("torus_5_1"), guard=2).span_attained is None
