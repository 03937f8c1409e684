"""Differential principal factorization (DPF) types.

Only the unramified types and the cyclic type are decided here; every
other label exists for data interchange and is never computed.
"""

from dataclasses import dataclass
from enum import Enum


class DpfType(str, Enum):
    ALPHA1 = "a1"
    ALPHA2 = "a2"
    ALPHA3 = "a3"
    BETA1 = "b1"
    BETA2 = "b2"
    GAMMA = "g"
    DELTA1 = "d1"
    DELTA2 = "d2"
    EPSILON = "e"
    ZETA = "z"
    # simply real and pure families reuse some tokens
    ALPHA = "a"
    BETA = "b"

    def __str__(self):
        return self.value


UNDECIDED = "undecided"

TOTALLY_REAL_TYPES = frozenset({
    DpfType.ALPHA1, DpfType.ALPHA2, DpfType.ALPHA3, DpfType.BETA1, DpfType.BETA2,
    DpfType.GAMMA, DpfType.DELTA1, DpfType.DELTA2, DpfType.EPSILON})
SIMPLY_REAL_TYPES = frozenset({DpfType.ALPHA1, DpfType.ALPHA2, DpfType.BETA})
PURE_TYPES = frozenset({DpfType.ALPHA, DpfType.BETA, DpfType.GAMMA})
CYCLIC_TYPES = frozenset({DpfType.ZETA})


def type_family(signature, pure=False, cyclic=False):
    """Labels allowed for a field with these flags."""
    if cyclic:
        return CYCLIC_TYPES
    if pure:
        return PURE_TYPES
    return TOTALLY_REAL_TYPES if _is_real(signature) else SIMPLY_REAL_TYPES


def _is_real(signature):
    if signature in ("totallyReal", "real", (3, 0), 1):
        return True
    if signature in ("totallyComplex", "complex", "simplyReal", (1, 1), -1):
        return False
    raise ValueError(f"unknown signature {signature!r}")


def unramified_types(signature, rho):
    """Possible types of an unramified dihedral field over K with 3-rank rho.

    Over a real K the normal closure is totally real; over an imaginary K
    it is totally complex.
    """
    if rho < 1:
        raise ValueError("no unramified cyclic cubic extension exists for rho = 0")
    if not _is_real(signature):
        return frozenset({DpfType.ALPHA1})
    if rho == 1:
        return frozenset({DpfType.DELTA1})
    return frozenset({DpfType.ALPHA1, DpfType.DELTA1})


@dataclass(frozen=True)
class DpfConstraint:
    A: int
    R: int
    U: int
    C: int
    t: int
    s: int
    rho: int


def check_constraint(c):
    """Bounds on absolute/relative factorizations, unit and capitulation counts."""
    if min(c.A, c.R, c.U, c.C, c.t, c.s, c.rho) < 0:
        return False
    if c.A > min(c.t, 2) or c.R > min(c.s, 2):
        return False
    if c.t == 0 and c.s == 0:
        return c.A == 0 and c.R == 0 and c.U + 1 == c.C and 1 <= c.C <= min(c.rho, 2)
    return True


def decidable_type_column(record, rho):
    """The type of an enumerated field when it is decided, else UNDECIDED."""
    if record.isCyclic or record.dK == 1:
        return DpfType.ZETA.value
    if record.f != 1:
        return UNDECIDED
    if record.dK < 0:
        return DpfType.ALPHA1.value
    if rho == 1:
        return DpfType.DELTA1.value
    return UNDECIDED
