"""The relation catalog and its certified verifier."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import epilab.registry
from epilab.bignum import BigFixed
from epilab.expr import parse
from epilab.registry import (
    NEAR_EQUAL,
    NEAR_INTEGER,
    REGISTRY,
    Relation,
    VerificationFailure,
    VerificationReport,
    digits_of_agreement,
    get_relation,
    relation_ids,
    verify,
    verify_all,
)

EXPECTED_IDS = [f"R{i:02d}" for i in range(1, 21)]


def test_catalog_ids_and_lookup():
    assert relation_ids() == EXPECTED_IDS
    for rid in EXPECTED_IDS:
        rel = get_relation(rid)
        assert rel.id == rid
        assert rel.kind in (NEAR_EQUAL, NEAR_INTEGER)
        assert rel.paper_eq
        assert rel.min_digits >= 6
    with pytest.raises(KeyError):
        get_relation("R99")


def test_kind_split():
    kinds = [get_relation(rid).kind for rid in EXPECTED_IDS]
    assert kinds.count(NEAR_EQUAL) == 8
    assert kinds.count(NEAR_INTEGER) == 12


def test_near_integer_sides_are_integers():
    from epilab.expr import eval_interval

    for rid in EXPECTED_IDS:
        rel = get_relation(rid)
        if rel.kind == NEAR_INTEGER:
            lo, hi = eval_interval(rel.rhs, 10)
            assert lo == hi
            assert lo.denominator == 1


def test_catalog_notes():
    # one relation records a claimed integer that is not the nearest one
    assert "961" in get_relation("R16").note
    assert get_relation("R07").min_digits >= 45


def test_digits_of_agreement_examples():
    assert digits_of_agreement(BigFixed.parse("9.001"), BigFixed.from_int(9)) == 3
    assert digits_of_agreement(BigFixed.parse("0.999999956"), BigFixed.from_int(1)) == 7
    assert digits_of_agreement(BigFixed.parse("1.5"), BigFixed.from_int(1)) == 0
    with pytest.raises(ValueError):
        digits_of_agreement(BigFixed.from_int(3), BigFixed.from_int(0))
    with pytest.raises(ValueError):
        digits_of_agreement(BigFixed.from_int(3), BigFixed.from_int(3))
    assert digits_of_agreement(BigFixed.from_int(3), BigFixed.from_int(3), cap=30) == 30
    assert digits_of_agreement(BigFixed.parse("9.001"), BigFixed.from_int(9), cap=2) == 2


@given(
    st.integers(min_value=-(10**7), max_value=10**7),
    st.integers(min_value=1, max_value=10**7),
    st.integers(min_value=-3, max_value=3),
)
@settings(max_examples=100)
def test_digits_of_agreement_scale_invariant(m1, m2, k):
    a = Fraction(m1, 10**4)
    b = Fraction(m2, 10**4)
    if a == b:
        return
    base = digits_of_agreement(BigFixed.from_fraction(a, 12), BigFixed.from_fraction(b, 12))
    shift = Fraction(10) ** k
    shifted = digits_of_agreement(
        BigFixed.from_fraction(a * shift, 15), BigFixed.from_fraction(b * shift, 15)
    )
    assert base == shifted


def test_verify_rejects_low_precision():
    with pytest.raises(ValueError):
        verify(get_relation("R01"), 5)


def test_verify_r02_report_fields():
    r = verify(get_relation("R02"), 12)
    assert r.relation_id == "R02"
    assert r.precision_used == 12
    assert r.lhs_value.to_decimal_string().startswith("68.99966")
    assert r.rhs_value.as_fraction() == 69
    # the signed residual keeps the direction of the miss
    assert r.abs_residual.as_fraction() < 0
    assert r.rel_residual.as_fraction() > 0
    assert r.digits_of_agreement == 5
    assert r.certified


def test_verify_min_digits_escalation():
    r = verify(get_relation("R07"), 6)
    assert r.precision_used == 45
    assert r.certified
    assert r.digits_of_agreement >= 29


def test_verify_agreement_is_precision_stable():
    for rid in EXPECTED_IDS:
        rel = get_relation(rid)
        low = verify(rel, 12)
        high = verify(rel, 40)
        assert low.digits_of_agreement == high.digits_of_agreement, rid
        assert low.certified and high.certified


def test_to_dict_wire_schema():
    d = verify(get_relation("R02"), 12).to_dict()
    assert list(d) == [
        "id",
        "paper_eq",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "digits_of_agreement",
        "precision_used",
        "certified",
    ]
    assert isinstance(d["digits_of_agreement"], int)
    assert isinstance(d["precision_used"], int)
    assert isinstance(d["certified"], bool)
    for key in ("lhs", "rhs", "abs_residual", "rel_residual"):
        assert isinstance(d[key], str)
        BigFixed.parse(d[key])  # every numeric column is plain decimal text


def test_verify_all_full_catalog():
    reports = verify_all(12)
    assert [r.relation_id for r in reports] == EXPECTED_IDS
    assert all(isinstance(r, VerificationReport) for r in reports)
    assert all(r.certified for r in reports)


def test_verify_all_continues_past_failures(monkeypatch):
    broken = Relation(
        id="X01",
        lhs=parse("1/(1 - 1)"),
        rhs=parse("1"),
        kind=NEAR_EQUAL,
        paper_eq="none",
        paper_quote="",
    )
    patched = (REGISTRY[0], broken, REGISTRY[1])
    monkeypatch.setattr(epilab.registry, "REGISTRY", patched)
    out = verify_all(12)
    assert len(out) == 3
    assert isinstance(out[0], VerificationReport)
    assert isinstance(out[1], VerificationFailure)
    assert out[1].relation_id == "X01"
    assert "zero" in out[1].error
    assert isinstance(out[2], VerificationReport)


def test_verify_near_integer_demands_integer_rhs():
    bad = Relation(
        id="X02",
        lhs=parse("pi"),
        rhs=parse("e"),
        kind=NEAR_INTEGER,
        paper_eq="none",
        paper_quote="",
    )
    with pytest.raises(ValueError):
        verify(bad, 12)


def test_registry_is_immutable_tuple():
    assert isinstance(REGISTRY, tuple)
    assert len(REGISTRY) == 20
    with pytest.raises(AttributeError):
        REGISTRY[0].id = "zzz"  # type: ignore[misc]
