"""Acceptance checks shared by the ``verify`` subcommand and the test suite.

Each check returns a CheckResult; ``detail`` carries the first few
offending items when a check fails.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .arith import is_fundamental
from .conductor import admissible_conductors, divisor_lattice, factorization
from .cubicenum import brute_force_oracle, discriminant_counts, enumerate_fields
from .cubicpoly import isomorphic
from .dpf import (DpfConstraint, DpfType, check_constraint, decidable_type_column,
                  unramified_types)
from .multiplicity import predict
from .quadclass import rho3
from .selmer import ring_space
from .tables import PRESETS, census_for_preset, diff_against_expected

NEGATIVE_BOUND = 20000
POSITIVE_BOUND = 100000
ORACLE_BOUND = 2000


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.number:2d} {self.name}"
        return f"{text}: {self.detail}" if self.detail else text


@lru_cache(maxsize=None)
def fields(bound, sign):
    return tuple(enumerate_fields(bound, sign))


@lru_cache(maxsize=None)
def counts(bound, sign):
    return discriminant_counts(fields(bound, sign))


def _fundamentals(bound, sign):
    if sign < 0:
        return [d for d in range(-3, -bound - 1, -1) if is_fundamental(d)]
    return [d for d in range(5, bound + 1) if is_fundamental(d)]


def _show(items, n=5):
    items = list(items)
    more = f" (+{len(items) - n} more)" if len(items) > n else ""
    return ", ".join(map(str, items[:n])) + more


def check_negative_counts():
    recs = fields(NEGATIVE_BOUND, -1)
    pure = sum(r.isPure for r in recs)
    got = (len(recs), len(recs) - pure, pure)
    return CheckResult(1, "negative field counts (total, non-pure, pure)",
                       got == (3169, 3134, 35), f"got {got}, want (3169, 3134, 35)")


def check_positive_counts():
    recs = fields(POSITIVE_BOUND, 1)
    cyc = sum(r.isCyclic for r in recs)
    got = (len(recs), len(recs) - cyc, cyc)
    return CheckResult(2, "positive field counts (total, non-cyclic, cyclic)",
                       got == (4804, 4753, 51), f"got {got}, want (4804, 4753, 51)")


def check_census():
    problems = []
    for preset in PRESETS:
        sign = -1 if preset == "angell1972" else 1
        bound = NEGATIVE_BOUND if sign < 0 else POSITIVE_BOUND
        census = census_for_preset(preset, records=fields(bound, sign))
        problems.extend(f"{preset}: {m}" for m in diff_against_expected(census, preset))
    detail = f"{len(problems)} cell mismatches: {_show(problems, 4)}" if problems else ""
    return CheckResult(3, "census against reference tables", not problems, detail)


def _pairs(bound, sign, max_tau):
    ds = _fundamentals(bound, sign) + ([1] if sign > 0 else [])
    for d in ds:
        for f in admissible_conductors(d, bound):
            fact = factorization(d, f)
            if fact.tau <= max_tau:
                yield d, fact


def check_partition_identity(bound=NEGATIVE_BOUND):
    bad = []
    n = 0
    for sign in (-1, 1):
        cnt = counts(bound, sign) if sign < 0 else _filtered_counts(bound)
        for d, fact in _pairs(bound, sign, 2):
            n += 1
            pred = predict(d, fact)
            if not pred.covered or not pred.partition_holds():
                bad.append((d, fact.f, pred.coverage))
                continue
            for c, m in pred.perDivisor.items():
                if d == 1 and c == 1:
                    continue
                if cnt.get(c * c * d, 0) != m:
                    bad.append((d, fact.f, c, m, cnt.get(c * c * d, 0)))
    return CheckResult(4, f"partition identity and oracle match ({n} pairs, tau <= 2)",
                       not bad, _show(bad) if bad else "")


def _filtered_counts(bound):
    return {k: v for k, v in counts(POSITIVE_BOUND, 1).items() if k <= bound}


def check_prime_dichotomy():
    bad = []
    n = 0
    for sign, bound in ((-1, NEGATIVE_BOUND), (1, POSITIVE_BOUND)):
        cnt = counts(bound, sign)
        for d, fact in _pairs(bound, sign, 1):
            if d == 1 or fact.tau != 1 or fact.irregular:
                continue
            n += 1
            rho = rho3(d)
            rep = ring_space(d, fact, divisor_lattice(fact))
            m = cnt.get(fact.f ** 2 * d, 0)
            want = 3 ** rho if rep.freeFlags[fact.f] else 0
            if m != want:
                bad.append((d, fact.f, m, want))
    return CheckResult(5, f"prime conductor dichotomy ({n} pairs)", not bad,
                       _show(bad) if bad else "")


def _rank0_pairs(max_tau):
    cnt = counts(NEGATIVE_BOUND, -1)
    for d, fact in _pairs(NEGATIVE_BOUND, -1, max_tau):
        if d < -3 and fact.tau >= 1 and not fact.irregular and rho3(d) == 0:
            yield d, fact, cnt.get(fact.f ** 2 * d, 0)


def check_rank0_multiplicity():
    bad, n = [], 0
    for d, fact, m in _rank0_pairs(3):
        n += 1
        if m != 2 ** (fact.tau - 1):
            bad.append((d, fact.f, m))
    return CheckResult(6, f"rank 0 multiplicity 2^(tau-1) ({n} pairs)", not bad,
                       _show(bad) if bad else "")


def check_no_rank0_nilets():
    bad, n = [], 0
    for d, fact, m in _rank0_pairs(10):
        n += 1
        if m == 0:
            bad.append((d, fact.f))
    return CheckResult(7, f"no nilets at rank 0 ({n} pairs)", not bad,
                       _show(bad) if bad else "")


def _same_fields(ours, theirs):
    """Multiset equality of fields, matched by discriminant and isomorphism."""
    a, b = defaultdict(list), defaultdict(list)
    for r in ours:
        a[r.dL].append(r.poly)
    for r in theirs:
        b[r.dL].append(r.poly)
    if sorted((k, len(v)) for k, v in a.items()) != sorted((k, len(v)) for k, v in b.items()):
        return False
    for dl, polys in a.items():
        left = list(b[dl])
        for g in polys:
            match = next((h for h in left if isomorphic(g, h)), None)
            if match is None:
                return False
            left.remove(match)
    return True


def check_oracle(bound=ORACLE_BOUND):
    bad = []
    for sign in (-1, 1):
        ours = enumerate_fields(bound, sign)
        if not _same_fields(ours, brute_force_oracle(bound, sign)):
            bad.append(f"sign {sign} at {bound}")
        # the list can only change at a discriminant, so test both sides of each
        cuts = sorted({0} | {abs(r.dL) + k for r in ours for k in (-1, 0)})
        for b in cuts:
            if enumerate_fields(b, sign) != [r for r in ours if abs(r.dL) <= b]:
                bad.append(f"sign {sign} at {b}")
                break
    return CheckResult(8, f"enumeration equals polynomial oracle up to {bound}", not bad,
                       _show(bad) if bad else "")


def check_unramified_dpf():
    tally = Counter()
    for sign, bound in ((-1, NEGATIVE_BOUND), (1, POSITIVE_BOUND)):
        for r in fields(bound, sign):
            if r.f == 1:
                rho = rho3(r.dK)
                tally[(sign, rho, decidable_type_column(r, rho))] += 1
    got = (tally[(-1, 1, "a1")], tally[(-1, 2, "a1")], tally[(1, 1, "d1")])
    return CheckResult(9, "unramified DPF counts (a1 rank 1, a1 rank 2, d1 rank 1)",
                       got == (2143, 88, 3300), f"got {got}, want (2143, 88, 3300)")


def check_unramified_types():
    a1, d1 = DpfType.ALPHA1, DpfType.DELTA1
    cases = [
        unramified_types("totallyComplex", 1) == {a1},
        unramified_types("totallyComplex", 3) == {a1},
        unramified_types("totallyReal", 1) == {d1},
        unramified_types("totallyReal", 2) == {a1, d1},
        check_constraint(DpfConstraint(0, 0, 0, 1, 0, 0, 1)),
        check_constraint(DpfConstraint(0, 0, 1, 2, 0, 0, 2)),
        not check_constraint(DpfConstraint(1, 0, 0, 1, 0, 0, 1)),
        not check_constraint(DpfConstraint(0, 1, 0, 1, 0, 0, 1)),
        not check_constraint(DpfConstraint(0, 0, 1, 2, 0, 0, 1)),
        not check_constraint(DpfConstraint(0, 0, 0, 2, 0, 0, 2)),
        not check_constraint(DpfConstraint(0, 0, 2, 3, 0, 0, 3)),
        check_constraint(DpfConstraint(2, 2, 0, 0, 3, 2, 0)),
        not check_constraint(DpfConstraint(3, 0, 0, 0, 3, 0, 0)),
        not check_constraint(DpfConstraint(0, 3, 0, 0, 3, 3, 0)),
    ]
    try:
        unramified_types("totallyReal", 0)
        cases.append(False)
    except ValueError:
        cases.append(True)
    failed = [i for i, ok in enumerate(cases) if not ok]
    return CheckResult(10, "unramified type sets and constraint bounds", not failed,
                       f"failed cases {failed}" if failed else "")


CHECKS = (check_negative_counts, check_positive_counts, check_census,
          check_partition_identity, check_prime_dichotomy, check_rank0_multiplicity,
          check_no_rank0_nilets, check_oracle, check_unramified_dpf,
          check_unramified_types)


def run_all(only=None):
    """Run the checks (all, or the numbers in ``only``) in order."""
    out = []
    for i, check in enumerate(CHECKS, start=1):
        if only and i not in only:
            continue
        out.append(check())
    return out

