"""Conductors of dihedral cubic fields over a quadratic field.

A cubic field L with quadratic resolvent K = Q(sqrt d) has d_L = f^2 * d.
This module splits d_L into (f, d), decides which conductors f can occur
over a given d for p = 3, and lists the divisor lattice of f.
"""

from dataclasses import dataclass, field
from math import isqrt

from .arith import factorize, fundamental_part, kronecker
from .errors import InadmissibleError
from .quadclass import check_fundamental

TAME_SPLIT = "tame-split"
TAME_INERT = "tame-inert"
TAME_RAMIFIED = "tame-ramified"
WILD = "wild"


def decompose(dL):
    """Return (f, dK) with dL == f**2 * dK and dK fundamental or 1."""
    if dL == 0:
        raise ValueError("discriminant must be nonzero")
    try:
        return fundamental_part(dL)
    except ValueError as exc:
        raise ValueError(f"{dL} is not a cubic field discriminant") from exc


@dataclass(frozen=True)
class PrimePowerDivisor:
    q: int
    e: int
    kind: str
    regular: bool = True

    @property
    def value(self):
        return self.q ** self.e

    @property
    def local_rank(self):
        """F_3-dimension this divisor adds to the ring class group."""
        return 1 if self.regular else 2

    @property
    def is_tame(self):
        return self.kind != WILD

    def residue_class(self):
        """+1 or -1 for tame q mod 3, 0 for the wild divisor."""
        if self.kind == WILD:
            return 0
        return 1 if self.q % 3 == 1 else -1


@dataclass(frozen=True)
class ConductorFactorization:
    f: int
    dK: int
    divisors: tuple = field(default_factory=tuple)

    @property
    def t(self):
        return sum(1 for x in self.divisors if x.is_tame)

    @property
    def w(self):
        return sum(1 for x in self.divisors if not x.is_tame)

    @property
    def s(self):
        return sum(1 for x in self.divisors if x.kind == TAME_SPLIT)

    @property
    def tau(self):
        return len(self.divisors)

    @property
    def local_rank(self):
        return sum(x.local_rank for x in self.divisors)

    @property
    def wild(self):
        for x in self.divisors:
            if not x.is_tame:
                return x
        return None

    @property
    def irregular(self):
        return any(not x.regular for x in self.divisors)

    @property
    def tame_primes(self):
        return [x.q for x in self.divisors if x.is_tame]


def _splitting(dK, q):
    if dK == 1:
        return TAME_SPLIT
    k = kronecker(dK, q)
    if k == 1:
        return TAME_SPLIT
    if k == -1:
        return TAME_INERT
    return TAME_RAMIFIED


def _divisor_or_reason(dK, q, e):
    """PrimePowerDivisor for q^e | f over dK, or a string saying why not."""
    if q == 3:
        if e == 1:
            if dK != 1 and dK % 3 == 0:
                return PrimePowerDivisor(3, 1, WILD)
            return "3 || f needs d = +-3 (mod 9)"
        if e == 2:
            if dK % 3 != 0:
                return PrimePowerDivisor(3, 2, WILD)
            if dK % 9 == 6:
                return PrimePowerDivisor(3, 2, WILD, regular=False)
            return "9 || f needs d = +-1 (mod 3) or d = -3 (mod 9)"
        return "3-part of f exceeds 9"
    if e != 1:
        return f"{q}^{e} divides f"
    kind = _splitting(dK, q)
    if kind == TAME_RAMIFIED:
        return f"{q} ramifies in Q(sqrt {dK})"
    if q % 3 == 1 and kind != TAME_SPLIT:
        return f"{q} = +1 (mod 3) must split"
    if q % 3 == 2 and kind != TAME_INERT:
        return f"{q} = -1 (mod 3) must be inert"
    return PrimePowerDivisor(q, 1, kind)


def factorization(dK, f):
    """ConductorFactorization of f over dK; raises InadmissibleError."""
    check_fundamental(dK, allow_one=True)
    if f < 1:
        raise InadmissibleError(f"conductor must be positive, got {f}")
    divs = []
    for q, e in sorted(factorize(f).items()) if f > 1 else ():
        x = _divisor_or_reason(dK, q, e)
        if isinstance(x, str):
            raise InadmissibleError(f"f = {f} over d = {dK}: {x}")
        divs.append(x)
    if dK == 1:
        if f == 1:
            raise InadmissibleError("no cyclic cubic field has conductor 1")
        if any(x.q == 3 and x.e == 1 for x in divs):
            raise InadmissibleError("cyclic conductors have 3-part 1 or 9")
    return ConductorFactorization(f, dK, tuple(divs))


def is_admissible(dK, f, p=3):
    """(True, factorization) or (False, None)."""
    if p != 3:
        raise NotImplementedError("only p = 3 is supported")
    try:
        return True, factorization(dK, f)
    except InadmissibleError:
        return False, None


def divisor_lattice(fact):
    """Factorizations of the admissible divisors c | f, sorted by c."""
    divs = fact.divisors
    out = []
    for mask in range(1 << len(divs)):
        chosen = [divs[i] for i in range(len(divs)) if mask >> i & 1]
        out.append(chosen)
        wild = [x for x in chosen if not x.is_tame]
        # a 9 that is admissible may sit above an admissible 3
        if wild and wild[0].e == 2 and fact.dK % 3 == 0:
            lower = [x for x in chosen if x.is_tame]
            lower.append(PrimePowerDivisor(3, 1, WILD))
            out.append(lower)
    result = []
    for chosen in out:
        c = 1
        for x in chosen:
            c *= x.value
        if fact.dK == 1 and c == 1:
            result.append(ConductorFactorization(1, 1, ()))
            continue
        result.append(ConductorFactorization(
            c, fact.dK, tuple(sorted(chosen, key=lambda x: x.q))))
    return sorted(result, key=lambda x: x.f)


def admissible_primes(dK, limit):
    """Tame primes q <= limit that may divide an admissible conductor."""
    from .arith import primes_up_to
    return [q for q in primes_up_to(limit)
            if q != 3 and not isinstance(_divisor_or_reason(dK, q, 1), str)]


def admissible_conductors(dK, bound):
    """All f >= 1 admissible over dK with f^2 * |dK| <= bound, ascending.

    f = 1 is included for dK != 1; callers decide whether it counts.
    """
    fmax = isqrt(bound // abs(dK))
    if fmax < 1:
        return []
    tame = admissible_primes(dK, fmax)
    wild = [1]
    for e in (1, 2):
        if 3 ** e <= fmax and not isinstance(_divisor_or_reason(dK, 3, e), str):
            if not (dK == 1 and e == 1):
                wild.append(3 ** e)
    found = []

    def extend(start, value):
        found.append(value)
        for i in range(start, len(tame)):
            nxt = value * tame[i]
            if nxt > fmax:
                break
            extend(i + 1, nxt)

    for w in wild:
        extend(0, w)
    found = sorted(found)
    if dK == 1:
        found = [f for f in found if f > 1]
    return found
