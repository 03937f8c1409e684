import pytest
from hypothesis import given, strategies as st

from ringclass.conductor import admissible_conductors, factorization
from ringclass.cubicenum import discriminant_counts, enumerate_fields
from ringclass.multiplicity import (UNCOVERED, cyclic_multiplicity, irregular_case, predict,
                                    prime_conductor_case, rho0_regular, two_prime_case,
                                    unramified_multiplicity)
from ringclass.selmer import RingSpaceReport


def test_unramified_values():
    assert [unramified_multiplicity(3, r) for r in range(4)] == [0, 1, 4, 13]
    with pytest.raises(ValueError):
        unramified_multiplicity(3, -1)


@given(st.sampled_from([3, 5, 7, 11]), st.integers(0, 30))
def test_unramified_recurrence(p, rho):
    m = unramified_multiplicity(p, rho)
    assert unramified_multiplicity(p, rho + 1) == p * m + 1 > m


def test_prime_conductor_case():
    assert prime_conductor_case(3, 1, True, 5).perDivisor == {1: 1, 5: 3}
    assert prime_conductor_case(3, 1, False, 5).perDivisor == {1: 1, 5: 0}
    free0 = prime_conductor_case(3, 0, True, 2)
    assert free0.perDivisor == {1: 0, 2: 1} and free0.ringClassRank == 1
    five = prime_conductor_case(5, 1, True, 11)
    assert five.perDivisor[11] == 5 and not five.validated


def test_irregular_case():
    assert irregular_case(0, True, True).perDivisor == {1: 0, 3: 1, 9: 3}
    assert irregular_case(1, False, True).perDivisor == {1: 1, 3: 0, 9: 3}
    assert irregular_case(1, False, False).perDivisor == {1: 1, 3: 0, 9: 0}
    assert irregular_case(1, True, False).perDivisor == {1: 1, 3: 3, 9: 0}
    for flags in [(True, True), (True, False), (False, True), (False, False)]:
        assert irregular_case(2, *flags).partition_holds()


def _report(rho, defects, q1=2, q2=5):
    f = q1 * q2
    dims = {1: 0, q1: 1, q2: 1, f: 2}
    return RingSpaceReport(f, -1, rho, rho, localDims=dims,
                           defects=dict(zip((1, q1, q2, f), defects)))


@pytest.mark.parametrize("defects, expected", [
    ((0, 0, 0, 0), {2: 3, 5: 3, 10: 6}),
    ((0, 0, 1, 1), {2: 3, 5: 0, 10: 0}),
    ((0, 1, 0, 1), {2: 0, 5: 3, 10: 0}),
    ((0, 1, 1, 1), {2: 0, 5: 0, 10: 3}),
    ((0, 1, 1, 2), {2: 0, 5: 0, 10: 0}),
])
def test_two_prime_cases(defects, expected):
    pred = two_prime_case(3, 1, _report(1, defects), 2, 5)
    assert pred.perDivisor == {1: 1, **expected}
    assert pred.partition_holds()
    # at most one divisor c > 1 survives once anything is restricted
    if defects != (0, 0, 0, 0):
        assert sum(1 for c, m in pred.perDivisor.items() if c > 1 and m) <= 1


def test_two_prime_rank_zero():
    pred = two_prime_case(3, 0, _report(0, (0, 0, 0, 0)), 2, 5)
    assert pred.perDivisor == {1: 0, 2: 1, 5: 1, 10: 2}


def test_two_prime_unmatched():
    pred = two_prime_case(3, 1, _report(1, (0, 0, 0, 1)), 2, 5)
    assert pred.coverage == UNCOVERED


def test_rank0_and_cyclic():
    assert [rho0_regular(t) for t in (1, 2, 3)] == [1, 2, 4]
    with pytest.raises(ValueError):
        rho0_regular(2, d=-3)
    with pytest.raises(ValueError):
        rho0_regular(2, d=229)
    assert [cyclic_multiplicity(t) for t in (0, 1, 2)] == [0, 1, 2]


def test_predict_examples():
    assert predict(-23, factorization(-23, 1)).perDivisor == {1: 1}
    assert predict(-4027, factorization(-4027, 1)).perDivisor == {1: 4}
    six = predict(-3, factorization(-3, 6))
    assert six.perDivisor == {1: 0, 2: 0, 3: 0, 6: 1}
    cyc = predict(1, factorization(1, 63))
    assert cyc.perDivisor == {1: 0, 7: 1, 9: 1, 63: 2}


def test_predict_uncovered_for_three_primes():
    # 229 has Selmer rank 2; three tame primes lie outside the closed forms
    f = next(f for f in admissible_conductors(229, 10 ** 9)
             if factorization(229, f).tau == 3 and f % 3)
    pred = predict(229, factorization(229, f))
    assert pred.coverage == UNCOVERED
    assert pred.perDivisor == {1: 1}


@pytest.mark.parametrize("d", [-23, -31, -4027, -3299, -3, -7, 229, 257, 316, 12])
def test_predict_matches_enumeration(d):
    bound = 20000 if d < 0 else 60000
    counts = discriminant_counts(enumerate_fields(bound, -1 if d < 0 else 1))
    for f in admissible_conductors(d, bound):
        fact = factorization(d, f)
        if fact.tau > 2:
            continue
        pred = predict(d, fact)
        assert pred.covered
        for c, m in pred.perDivisor.items():
            assert counts.get(c * c * d, 0) == m, (d, f, c)
