import pytest

from ringclass.conductor import (TAME_INERT, TAME_SPLIT, WILD, admissible_conductors,
                                 decompose, divisor_lattice, factorization, is_admissible)
from ringclass.errors import InadmissibleError, NonFundamentalError


def test_decompose():
    assert decompose(-108) == (6, -3)
    assert decompose(-23) == (1, -23)
    assert decompose(49) == (7, 1)
    assert decompose(-300) == (10, -3)
    with pytest.raises(ValueError):
        decompose(0)


def test_admissible_examples():
    ok, fact = is_admissible(-3, 6)
    assert ok
    kinds = {(x.q, x.kind, x.regular) for x in fact.divisors}
    assert kinds == {(2, TAME_INERT, True), (3, WILD, True)}

    ok, fact = is_admissible(-4, 9)
    assert ok and not fact.irregular

    ok, fact = is_admissible(-3, 9)
    assert ok and fact.irregular and fact.local_rank == 2


@pytest.mark.parametrize("d, f", [
    (-4, 27),       # 3-part too large
    (-23, 4),       # square of a tame prime
    (-4, 3),        # 3 || f needs 3 | d
    (-15, 9),       # d = +3 (mod 9) has no 9
    (-7, 2),        # 2 splits but 2 = -1 (mod 3)
    (-23, 7),       # 7 is inert but 7 = +1 (mod 3)
    (-20, 5),       # ramified
    (1, 3),         # cyclic conductors avoid 3 || f
    (1, 1),
])
def test_inadmissible(d, f):
    assert is_admissible(d, f) == (False, None)
    with pytest.raises(InadmissibleError):
        factorization(d, f)


def test_non_fundamental():
    with pytest.raises(NonFundamentalError):
        factorization(-12 * 4, 5)


def test_counters():
    fact = factorization(-43, 2 * 5)
    assert (fact.t, fact.w, fact.tau) == (2, 0, 2)
    fact = factorization(229, 9 * 2)
    assert fact.w == 1 and fact.t == 1
    assert fact.s == sum(1 for x in fact.divisors if x.kind == TAME_SPLIT)


def test_divisor_lattice():
    fact = factorization(-43, 10)
    assert [c.f for c in divisor_lattice(fact)] == [1, 2, 5, 10]
    assert [c.f for c in divisor_lattice(factorization(-3, 9))] == [1, 3, 9]
    assert [c.f for c in divisor_lattice(factorization(-23, 1))] == [1]
    assert [c.f for c in divisor_lattice(factorization(-4, 9))] == [1, 9]


def test_admissible_conductors_over_minus_three():
    fs = admissible_conductors(-3, 20000)
    assert fs[:8] == [1, 2, 3, 5, 6, 7, 9, 10]
    assert all(f * f * 3 <= 20000 for f in fs)
    # every listed f is admissible and nothing admissible is skipped
    assert fs == [f for f in range(1, 82) if is_admissible(-3, f)[0]]


def test_admissible_conductors_cyclic():
    fs = admissible_conductors(1, 100000)
    assert 1 not in fs and 3 not in fs
    assert fs == [f for f in range(2, 317) if is_admissible(1, f)[0]]
