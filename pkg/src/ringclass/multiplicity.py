"""Multiplicities m(K, c) of cubic discriminants c^2 * d for all c | f.

The closed-form cases (prime conductor, irregular 9, two primes, rank 0,
cyclic) are selected from the defects in a RingSpaceReport.  Anything
outside them is either inverted from the ring class ranks, when that is
forced, or reported as uncovered.
"""

from dataclasses import dataclass, field

from .conductor import divisor_lattice
from .quadclass import quadratic_field
from .selmer import ring_space

UNCOVERED = "uncovered"


@dataclass(frozen=True)
class MultipletPrediction:
    perDivisor: dict
    ringClassRank: int
    coverage: str
    p: int = 3
    notes: tuple = field(default_factory=tuple)

    @property
    def covered(self):
        return self.coverage != UNCOVERED

    @property
    def validated(self):
        """Only p = 3 predictions are checked against field enumeration."""
        return self.p == 3

    @property
    def total(self):
        return sum(self.perDivisor.values())

    def partition_holds(self):
        return self.total == unramified_multiplicity(self.p, self.ringClassRank)

    def multiplicity(self, c):
        return self.perDivisor[c]


def unramified_multiplicity(p, rho):
    """(p^rho - 1)/(p - 1): number of cyclic degree-p extensions in rank rho."""
    if rho < 0:
        raise ValueError("rank must be non-negative")
    return (p ** rho - 1) // (p - 1)


def _covered(per, rank, case, p=3):
    return MultipletPrediction(dict(sorted(per.items())), rank, f"covered-by:{case}", p)


def prime_conductor_case(p, rho, free, q):
    """Prediction over {1, q} for a regular prime (power) conductor q.

    ``q`` is the conductor value or a PrimePowerDivisor; irregular
    divisors are rejected.
    """
    if getattr(q, "regular", True) is False:
        raise ValueError("irregular conductor: use irregular_case")
    q = getattr(q, "value", q)
    m1 = unramified_multiplicity(p, rho)
    if free:
        return _covered({1: m1, q: p ** rho}, rho + 1, "prime-free", p)
    return _covered({1: m1, q: 0}, rho, "prime-restrictive", p)


def irregular_case(rho, free_at_3, free_at_9):
    """Prediction over {1, 3, 9} for d = -3 (mod 9).

    ``free_at_9`` means V(9) = V(3): the step from 3 to 9 costs no rank.
    """
    m1 = unramified_multiplicity(3, rho)
    if free_at_3 and free_at_9:
        per, rank, case = {3: 3 ** rho, 9: 3 ** (rho + 1)}, rho + 2, "irregular-free"
    elif free_at_3:
        per, rank, case = {3: 3 ** rho, 9: 0}, rho + 1, "irregular-restricted-at-9"
    elif free_at_9:
        per, rank, case = {3: 0, 9: 3 ** rho}, rho + 1, "irregular-restricted-at-3"
    else:
        per, rank, case = {3: 0, 9: 0}, rho, "irregular-maximal-restriction"
    per[1] = m1
    return _covered(per, rank, case)


def _irregular_from_report(rep):
    d3, d9 = rep.defects[3], rep.defects[9]
    if d3 > 1 or d9 - d3 not in (0, 1):
        raise ValueError(f"inconsistent ring spaces at 3 and 9: defects {d3}, {d9}")
    return irregular_case(rep.rho, d3 == 0, d9 == d3)


def two_prime_case(p, rho, report, q1=None, q2=None):
    """Prediction over {1, q1, q2, q1*q2} from the defects of a report."""
    f = report.conductor
    if q1 is None:
        q1, q2 = sorted(c for c in report.defects if c not in (1, f))
    key = (report.defects[q1], report.defects[q2], report.defects[f])
    m1 = unramified_multiplicity(p, rho)
    top = p ** rho
    cases = {
        (0, 0, 0): ({q1: top, q2: top, f: top * (p - 1)}, rho + 2, "two-prime-free"),
        (0, 1, 1): ({q1: top, q2: 0, f: 0}, rho + 1, "two-prime-restricted-at-q2"),
        (1, 0, 1): ({q1: 0, q2: top, f: 0}, rho + 1, "two-prime-restricted-at-q1"),
        (1, 1, 1): ({q1: 0, q2: 0, f: top}, rho + 1, "two-prime-equal-spaces"),
        (1, 1, 2): ({q1: 0, q2: 0, f: 0}, rho, "two-prime-maximal-restriction"),
    }
    if key not in cases:
        return MultipletPrediction({1: m1}, rho + 2 - key[2], UNCOVERED, p,
                                   (f"defects {key} match no closed form",))
    per, rank, case = cases[key]
    per[1] = m1
    return _covered(per, rank, case, p)


def rho0_regular(tau, p=3, d=None):
    """2^(tau - 1) for regular conductors over d < -3 with rho = 0."""
    if p != 3:
        raise ValueError("only p = 3")
    if d is not None and d >= -3:
        raise ValueError(f"d = {d} has positive Selmer rank; use the ring spaces")
    if tau < 1:
        return 0
    return 2 ** (tau - 1)


def cyclic_multiplicity(tau):
    """Cyclic cubic fields of exact conductor with tau prime-power parts."""
    if tau < 1:
        return 0
    return 2 ** (tau - 1)


def rank_inversion(report, lattice):
    """m(c) from the ring class ranks of every c in the lattice.

    Uses N(c) = sum of m(c') over c' | c in the lattice, solved upward.
    """
    per = {}
    for c_fact in sorted(lattice, key=lambda x: x.f):
        c = c_fact.f
        below = sum(m for cp, m in per.items() if c % cp == 0)
        per[c] = unramified_multiplicity(3, report.ring_class_rank(c)) - below
    return per


def _cyclic_prediction(fact):
    per = {c.f: cyclic_multiplicity(c.tau) for c in divisor_lattice(fact)}
    return _covered(per, fact.tau, "cyclic")


def predict(d, fact):
    """MultipletPrediction for an admissible factorization over d."""
    if d == 1:
        return _cyclic_prediction(fact)
    rho = quadratic_field(d).rho3
    m1 = unramified_multiplicity(3, rho)
    if fact.tau == 0:
        return _covered({1: m1}, rho, "unramified")
    lattice = divisor_lattice(fact)
    rep = ring_space(d, fact, lattice)
    rank = rep.ring_class_rank(fact.f)
    if fact.irregular and fact.tau == 1:
        pred = _irregular_from_report(rep)
    elif rho == 0 and d < -3 and not fact.irregular:
        per = {c.f: rho0_regular(c.tau) for c in lattice}
        pred = _covered(per, rank, "rho0-regular")
    elif fact.tau == 1:
        x = fact.divisors[0]
        pred = prime_conductor_case(3, rho, rep.freeFlags[x.value], x)
    elif fact.tau == 2 and not fact.irregular:
        q1, q2 = (x.value for x in fact.divisors)
        pred = two_prime_case(3, rho, rep, q1, q2)
    elif fact.tau == 2 or rep.sigma == 0:
        # irregular 9 with one more prime, or everything free
        pred = _covered(rank_inversion(rep, lattice), rank, "rank-inversion")
    else:
        return MultipletPrediction({1: m1}, rank, UNCOVERED, 3,
                                   (f"tau = {fact.tau} with Selmer rank {rep.sigma}",))
    if pred.covered:
        if pred.ringClassRank != rank or not pred.partition_holds():
            raise AssertionError(
                f"partition identity fails for d = {d}, f = {fact.f}: {pred}")
    return pred
