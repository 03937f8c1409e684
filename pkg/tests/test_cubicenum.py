from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from ringclass.cubicenum import (BinaryCubicForm, brute_force_oracle, enumerate_fields,
                                 enumerate_forms, field_record, is_maximal,
                                 records_from_jsonl, records_to_csv, records_to_jsonl)
from ringclass.cubicpoly import isomorphic, poly_disc, pure_radicand
from ringclass.errors import ResourceError

GL2_SMALL = [(p, q, r, s) for p in range(-2, 3) for q in range(-2, 3)
             for r in range(-2, 3) for s in range(-2, 3) if abs(p * s - q * r) == 1]


def discs(bound, sign):
    return [r.dL for r in enumerate_fields(bound, sign)]


def test_first_forms():
    neg = enumerate_forms(30, "negative")
    assert [f.disc for f in neg] == [-23]
    assert sorted(f.disc for f in enumerate_forms(100, "positive")) == [49, 81]
    assert 148 in [f.disc for f in enumerate_forms(148, "positive")]
    assert enumerate_forms(10, 1) == []


def test_small_discriminant_lists():
    assert discs(100, -1) == [-23, -31, -44, -59, -76, -83, -87]
    assert discs(250, 1) == [49, 81, 148, 169, 229]


def test_maximality():
    # x^3 - x - 1 and x^3 - 3x - 1 as binary forms (a, b, c, d) with F(x, 1) = poly
    assert is_maximal(BinaryCubicForm(1, 0, -1, -1))
    assert is_maximal(BinaryCubicForm(1, 0, -3, -1))
    # an order of index 4 in the field of discriminant -23
    sub = BinaryCubicForm(2, 0, -2, -2)
    assert sub.disc == 16 * -23
    assert not is_maximal(sub)


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(-6, 6)] * 4), st.sampled_from(GL2_SMALL))
def test_disc_is_gl2_invariant(coeffs, m):
    f = BinaryCubicForm(*coeffs)
    g = f.act(m)
    assert g.disc == f.disc
    # the Hessian is a covariant: its discriminant is -3 disc(F)
    P, Q, R = g.hessian()
    assert Q * Q - 4 * P * R == -3 * g.disc


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(-5, 5)] * 4))
def test_monic_poly_disc(coeffs):
    f = BinaryCubicForm(*coeffs)
    if f.a == 0:
        return
    assert poly_disc(*f.monic()) == f.a ** 2 * f.disc


def test_oracle_examples():
    (rec,) = brute_force_oracle(23, -1)
    assert rec.dL == -23 and isomorphic(rec.poly, (0, -1, -1))
    assert sorted(r.dL for r in brute_force_oracle(81, 1)) == [49, 81]
    assert brute_force_oracle(0, 1) == []
    with pytest.raises(ResourceError):
        brute_force_oracle(2001, 1)


@pytest.mark.parametrize("sign", [-1, 1])
def test_oracle_agrees_at_1000(sign):
    ours = enumerate_fields(1000, sign)
    theirs = brute_force_oracle(1000, sign)
    assert Counter(r.dL for r in ours) == Counter(r.dL for r in theirs)
    for r in ours:
        assert any(isomorphic(r.poly, s.poly) for s in theirs if s.dL == r.dL)


def test_record_fields():
    rec = field_record(BinaryCubicForm(1, 0, -3, -1))
    assert (rec.dL, rec.f, rec.dK, rec.isCyclic, rec.isPure) == (81, 9, 1, True, False)
    assert rec.signature == "totallyReal"
    pure = [r for r in enumerate_fields(300, -1) if r.isPure]
    assert [(r.dL, r.radicand) for r in pure] == [(-108, 2), (-243, 3), (-300, 10)]


def test_pure_radicand():
    assert pure_radicand(0, 0, -2) == 2
    assert pure_radicand(0, 0, -4) == 2
    assert pure_radicand(0, -1, -1) is None


def test_multiplicity_distribution_negative(negative_fields):
    counts = Counter(Counter(r.dL for r in negative_fields).values())
    assert counts == {1: 2853, 2: 27, 3: 58, 4: 22}


def test_multiplicity_distribution_positive(positive_fields):
    counts = Counter(Counter(r.dL for r in positive_fields).values())
    assert counts == {1: 4683, 2: 19, 3: 21, 4: 5}


def test_serialization_roundtrip():
    recs = enumerate_fields(500, -1)
    back = records_from_jsonl(records_to_jsonl(recs))
    assert [(r.dL, r.poly, r.f, r.dK) for r in back] == [(r.dL, r.poly, r.f, r.dK) for r in recs]
    lines = records_to_csv(recs).splitlines()
    assert lines[0] == "dL,f,dK,a2,a1,a0,signature,cyclic,pure"
    assert len(lines) == len(recs) + 1


def test_limits():
    with pytest.raises(ResourceError):
        enumerate_fields(10 ** 8, 1)
    with pytest.raises(ValueError):
        enumerate_forms(100, "sideways")


def test_worker_count_does_not_change_output():
    assert enumerate_fields(3000, -1, workers=1) == enumerate_fields(3000, -1, workers=2)
