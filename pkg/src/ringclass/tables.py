"""Census of admissible (d, f) pairs by conductor shape and multiplicity.

Every admissible pair with |f^2 d| <= bound is swept (fundamental d
first, then f ascending) and given the number of enumerated cubic fields
of discriminant f^2 d as its multiplicity, so nilets appear as m = 0.
Rows are keyed by (pattern, condition, rho) and can be diffed against
the reference tables embedded below.
"""

import csv
import io
import json
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .arith import is_fundamental
from .conductor import admissible_conductors, factorization
from .cubicenum import default_workers, enumerate_fields
from .dpf import UNDECIDED, decidable_type_column
from .errors import ResourceError
from .quadclass import rho3

NON_PURE = "nonPure"
PURE = "pure"
CYCLIC = "cyclic"
NON_CYCLIC_REAL = "nonCyclicReal"
STRATA = (NON_PURE, PURE, CYCLIC, NON_CYCLIC_REAL)

CENSUS_LIMIT = 10 ** 6
MAX_MULTIPLICITY = 4
CENSUS_COLUMNS = ["pattern", "condition", "rho", "total",
                  "m0", "m1", "m2", "m3", "m4", "fields"]


@dataclass(frozen=True, order=True)
class ConductorShape:
    pattern: str
    condition: str
    rhoClass: int


@dataclass
class CensusRow:
    shape: ConductorShape
    byMultiplicity: Counter = field(default_factory=Counter)
    dpf: Counter = field(default_factory=Counter)
    stratum: str = ""

    @property
    def totalAdmissible(self):
        return sum(self.byMultiplicity.values())

    @property
    def nilets(self):
        return self.byMultiplicity[0]

    @property
    def fieldCount(self):
        return sum(m * n for m, n in self.byMultiplicity.items())

    def cells(self):
        """Column name -> value, in CSV order."""
        out = {"pattern": self.shape.pattern, "condition": self.shape.condition,
               "rho": self.shape.rhoClass, "total": self.totalAdmissible}
        for m in range(MAX_MULTIPLICITY + 1):
            out[f"m{m}"] = self.byMultiplicity[m]
        out["fields"] = self.fieldCount
        return out


# --- shapes ----------------------------------------------------------------

def _indexed(letter, n):
    if n == 1:
        return letter
    return "".join(f"{letter}{i}" for i in range(1, n + 1))


def shape_pattern(fact):
    """Row label of a conductor: '1', 'q', '9', '3q', 'q1q2l', ..."""
    if fact.tau == 0:
        return "1"
    wild = fact.wild
    nq = sum(1 for q in fact.tame_primes if q % 3 == 2)
    nl = sum(1 for q in fact.tame_primes if q % 3 == 1)
    head = str(wild.value) if wild else ""
    return head + (_indexed("q", nq) if nq else "") + (_indexed("l", nl) if nl else "")


def _prime_condition(fact):
    kinds = {q % 3 for q in fact.tame_primes}
    if kinds == {2}:
        return "q=-1 mod 3"
    if kinds == {1}:
        return "l=+1 mod 3"
    return "q=-1, l=+1 mod 3"


def shape_condition(fact):
    d = fact.dK
    if fact.tau == 0:
        return "unramified"
    wild = fact.wild
    if wild is None:
        return _prime_condition(fact)
    if d in (1, -3):
        return f"d={d}"
    if fact.tau > 2:
        return _prime_condition(fact)
    if wild.e == 1:
        return "d=+3 mod 9" if d % 9 == 3 else "d=-3 mod 9"
    if not wild.regular:
        return "d=-3 mod 9"
    return "d=+1 mod 3" if d % 3 == 1 else "d=-1 mod 3"


def conductor_shape(fact, rho):
    return ConductorShape(shape_pattern(fact), shape_condition(fact), rho)


# --- sweep -----------------------------------------------------------------

def _stratum_of(d):
    if d == 1:
        return CYCLIC
    if d == -3:
        return PURE
    return NON_PURE if d < 0 else NON_CYCLIC_REAL


def _discriminants(bound, stratum):
    if stratum == CYCLIC:
        return [1]
    if stratum == PURE:
        return [-3] if bound >= 3 else []
    if stratum == NON_PURE:
        return [d for d in range(-4, -bound - 1, -1) if is_fundamental(d)]
    return [d for d in range(5, bound + 1) if is_fundamental(d)]


def counted(d, f, rho):
    """Whether the pair (d, f) is part of the census.

    f = 1 only counts when it carries fields (rho >= 1).  Over d = -3 the
    conductor 3 is left out: the cube root of unity is never a local cube
    at 3, so no field can have discriminant -27.
    """
    if f == 1:
        return rho >= 1
    if d == -3 and f == 3:
        return False
    return True


def _pairs_for(args):
    chunk, bound = args
    out = []
    for d in chunk:
        rho = 0 if d == 1 else rho3(d)
        for f in admissible_conductors(d, bound):
            if counted(d, f, rho):
                out.append((d, f, rho))
    return out


def admissible_pairs(bound, stratum, workers=None):
    """(d, f, rho) for every counted pair, in sweep order."""
    ds = _discriminants(bound, stratum)
    workers = workers or default_workers()
    chunks = [ds[i:i + 512] for i in range(0, len(ds), 512)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_pairs_for, [(c, bound) for c in chunks]))
    else:
        parts = [_pairs_for((c, bound)) for c in chunks]
    return [p for part in parts for p in part]


def _sign_of(stratum):
    return -1 if stratum in (NON_PURE, PURE) else 1


def build_census(bound, sign, stratum, records=None, workers=None, strict=True):
    """CensusRows for one stratum, sorted by rho, then pattern length.

    ``records`` may be passed to reuse an enumeration of the same range.
    A field that lands on no admissible pair is an error; with
    ``strict=False`` such fields are collected in an "unassigned" row.
    """
    if stratum not in STRATA:
        raise ValueError(f"unknown stratum {stratum!r}")
    sign = -1 if sign in (-1, "negative", "-") else 1
    if sign != _sign_of(stratum):
        raise ValueError(f"stratum {stratum} does not occur for sign {sign}")
    if bound > CENSUS_LIMIT:
        raise ResourceError(f"census bound {bound} exceeds {CENSUS_LIMIT}")
    if records is None:
        records = enumerate_fields(bound, sign, workers=workers)
    by_disc = defaultdict(list)
    for r in records:
        if abs(r.dL) <= bound and _stratum_of(r.dK) == stratum:
            by_disc[r.dL].append(r)
    rows = {}
    seen = set()
    for d, f, rho in admissible_pairs(bound, stratum, workers):
        fact = factorization(d, f)
        shape = conductor_shape(fact, rho)
        row = rows.setdefault(shape, CensusRow(shape, stratum=stratum))
        fields_here = by_disc.get(f * f * d, [])
        row.byMultiplicity[len(fields_here)] += 1
        for r in fields_here:
            label = decidable_type_column(r, rho)
            if label != UNDECIDED:
                row.dpf[label] += 1
        seen.add(f * f * d)
    stray = sorted(set(by_disc) - seen, key=abs)
    if stray and strict:
        raise ValueError(f"fields of discriminant {stray[:5]} match no census shape")
    if stray:
        shape = ConductorShape("unassigned", "inadmissible", -1)
        rows[shape] = CensusRow(shape, Counter(len(by_disc[x]) for x in stray),
                                stratum=stratum)
    return sorted(rows.values(), key=_row_order)


def _row_order(row):
    s = row.shape
    return (s.rhoClass, s.pattern != "1", len(s.pattern), s.pattern, s.condition)


def field_totals(rows):
    """(discriminants with m >= 1, fields, nilets) of census rows."""
    discs = sum(n for row in rows for m, n in row.byMultiplicity.items() if m >= 1)
    fields = sum(row.fieldCount for row in rows)
    nilets = sum(row.nilets for row in rows)
    return discs, fields, nilets


def summary(rows):
    """Total and the m = 0..4 columns summed over rows."""
    out = {"total": sum(r.totalAdmissible for r in rows)}
    for m in range(MAX_MULTIPLICITY + 1):
        out[f"m{m}"] = sum(r.byMultiplicity[m] for r in rows)
    return out


# --- reference tables ------------------------------------------------------

def _row(pattern, condition, rho, total, mult, dpf=None):
    return {"pattern": pattern, "condition": condition, "rho": rho, "total": total,
            "mult": dict(enumerate(mult)), "dpf": dpf or {}}


_QM, _LP, _QL = "q=-1 mod 3", "l=+1 mod 3", "q=-1, l=+1 mod 3"
_P3, _M3 = "d=+3 mod 9", "d=-3 mod 9"
_P1, _M1 = "d=+1 mod 3", "d=-1 mod 3"

# multiplicity columns are m = 0, 1, 2, 3, 4; DPF cells only where decidable
EXPECTED = {
    "angell1972": {
        "bound": 20000,
        "sign": -1,
        NON_PURE: {
            "rows": [
                _row("q", _QM, 0, 454, [0, 454]),
                _row("3", _P3, 0, 62, [0, 62]),
                _row("3", _M3, 0, 58, [0, 58]),
                _row("9", _M3, 0, 7, [0, 0, 0, 7]),
                _row("9", _M1, 0, 23, [0, 23]),
                _row("9", _P1, 0, 20, [0, 20]),
                _row("l", _LP, 0, 64, [0, 64]),
                _row("q1q2", _QM, 0, 6, [0, 0, 6]),
                _row("3q", _P3, 0, 7, [0, 0, 7]),
                _row("3q", _M3, 0, 3, [0, 0, 3]),
                _row("9q", _M1, 0, 3, [0, 0, 3]),
                _row("9q", _P1, 0, 3, [0, 0, 3]),
                _row("3l", _P3, 0, 1, [0, 0, 1]),
                _row("ql", _QL, 0, 1, [0, 0, 1]),
                _row("1", "unramified", 1, 2143, [0, 2143], {"a1": 2143}),
                _row("q", _QM, 1, 196, [162, 0, 0, 34]),
                _row("3", _P3, 1, 24, [22, 0, 0, 2]),
                _row("3", _M3, 1, 22, [16, 0, 0, 6]),
                _row("9", _M1, 1, 5, [5]),
                _row("9", _P1, 1, 9, [8, 0, 0, 1]),
                _row("l", _LP, 1, 22, [19, 0, 0, 3]),
                _row("q1q2", _QM, 1, 2, [1, 0, 0, 1]),
                _row("3q", _P3, 1, 3, [1, 0, 0, 2]),
                _row("9q", _P1, 1, 1, [0, 0, 0, 1]),
                _row("ql", _QL, 1, 2, [1, 0, 0, 1]),
                _row("1", "unramified", 2, 22, [0, 0, 0, 0, 22], {"a1": 88}),
            ],
            "summary": {"total": 3163, "m0": 235, "m1": 2824, "m2": 24, "m3": 58, "m4": 22},
            "totals": (2928, 3134, 235),
        },
        PURE: {
            "rows": [
                _row("q", _QM, 0, 11, [8, 3]),
                _row("9", "d=-3", 0, 1, [0, 1]),
                _row("l", _LP, 0, 10, [7, 3]),
                _row("q1q2", _QM, 0, 6, [1, 5]),
                _row("3q", "d=-3", 0, 5, [1, 4]),
                _row("9q", "d=-3", 0, 2, [0, 0, 2]),
                _row("3l", "d=-3", 0, 3, [1, 2]),
                _row("9l", "d=-3", 0, 1, [0, 0, 1]),
                _row("ql", _QL, 0, 8, [2, 6]),
                _row("q1q2l", _QL, 0, 1, [0, 1]),
                _row("3q1q2", "d=-3", 0, 2, [0, 2]),
                _row("3ql", "d=-3", 0, 2, [0, 2]),
            ],
            "summary": {"total": 52, "m0": 20, "m1": 29, "m2": 3, "m3": 0, "m4": 0},
            "totals": (32, 35, 20),
        },
    },
    "angell1975": {
        "bound": 100000,
        "sign": 1,
        NON_CYCLIC_REAL: {
            "rows": [
                _row("q", _QM, 0, 3025, [2219, 806]),
                _row("3", _P3, 0, 396, [287, 109]),
                _row("3", _M3, 0, 389, [284, 105]),
                _row("9", _M3, 0, 48, [9, 38, 0, 1]),
                _row("9", _M1, 0, 136, [102, 34]),
                _row("9", _P1, 0, 127, [96, 31]),
                _row("l", _LP, 0, 402, [316, 86]),
                _row("q1q2", _QM, 0, 70, [30, 38, 2]),
                _row("3q", _P3, 0, 46, [23, 23]),
                _row("3q", _M3, 0, 45, [19, 25, 1]),
                _row("9q", _M3, 0, 5, [0, 0, 4, 1]),
                _row("9q", _M1, 0, 14, [6, 8]),
                _row("9q", _P1, 0, 15, [5, 10]),
                _row("9l", _M1, 0, 1, [0, 1]),
                _row("3l", _P3, 0, 6, [1, 5]),
                _row("3l", _M3, 0, 5, [2, 3]),
                _row("ql", _QL, 0, 43, [13, 29, 1]),
                _row("3q1q2", _QM, 0, 2, [0, 1, 1]),
                _row("1", "unramified", 1, 3300, [0, 3300], {"d1": 3300}),
                _row("q", _QM, 1, 275, [261, 0, 0, 14]),
                _row("3", _M3, 1, 35, [34, 0, 0, 1]),
                _row("l", _LP, 1, 28, [25, 0, 0, 3]),
                _row("3q", _M3, 1, 2, [1, 0, 0, 1]),
                _row("1", "unramified", 2, 5, [0, 0, 0, 0, 5]),
            ],
            "summary": {"total": 8420, "m0": 3733, "m1": 4652, "m2": 9, "m3": 21, "m4": 5},
            "totals": (4687, 4753, 3733),
        },
        CYCLIC: {
            "rows": [
                _row("9", "d=1", 0, 1, [0, 1], {"z": 1}),
                _row("l", _LP, 0, 30, [0, 30], {"z": 30}),
                _row("9l", "d=1", 0, 4, [0, 0, 4], {"z": 8}),
                _row("l1l2", _LP, 0, 6, [0, 0, 6], {"z": 12}),
            ],
            "summary": {"total": 41, "m0": 0, "m1": 31, "m2": 10, "m3": 0, "m4": 0},
            "totals": (41, 51, 0),
        },
    },
}

PRESETS = tuple(EXPECTED)


def preset_strata(preset):
    if preset not in EXPECTED:
        raise ValueError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    spec = EXPECTED[preset]
    return [s for s in STRATA if s in spec]


def census_for_preset(preset, workers=None, records=None, strict=True):
    """{stratum: rows} for a preset, sharing one enumeration."""
    strata = preset_strata(preset)
    spec = EXPECTED[preset]
    if records is None:
        records = enumerate_fields(spec["bound"], spec["sign"], workers=workers)
    return {s: build_census(spec["bound"], spec["sign"], s, records, workers, strict)
            for s in strata}


@dataclass(frozen=True)
class Mismatch:
    stratum: str
    row: tuple
    column: str
    expected: int
    actual: int

    def __str__(self):
        return (f"{self.stratum} {'/'.join(map(str, self.row))} {self.column}: "
                f"expected {self.expected}, got {self.actual}")


def diff_against_expected(census, preset):
    """Every cell where ``census`` ({stratum: rows}) differs from the preset.

    Compares the row totals, the m = 0..4 columns, the decidable DPF
    cells and the summary row.  An empty list means a full match.
    """
    strata = preset_strata(preset)
    out = []
    for stratum in strata:
        exp = EXPECTED[preset][stratum]
        rows = census.get(stratum, [])
        actual = {(r.shape.pattern, r.shape.condition, r.shape.rhoClass): r for r in rows}
        wanted = {(e["pattern"], e["condition"], e["rho"]): e for e in exp["rows"]}
        for key in sorted(set(actual) | set(wanted), key=lambda k: (k[2], k[0], k[1])):
            e, a = wanted.get(key), actual.get(key)
            exp_cells = _expected_cells(e)
            act_cells = _actual_cells(a, e)
            for m in (a.byMultiplicity if a else ()):
                if m > MAX_MULTIPLICITY:
                    exp_cells[f"m{m}"] = 0
                    act_cells[f"m{m}"] = a.byMultiplicity[m]
            for col in exp_cells:
                if exp_cells[col] != act_cells[col]:
                    out.append(Mismatch(stratum, key, col, exp_cells[col], act_cells[col]))
        got = summary(rows)
        beyond = sum(n for r in rows for m, n in r.byMultiplicity.items()
                     if m > MAX_MULTIPLICITY)
        if beyond:
            out.append(Mismatch(stratum, ("summary",), f"m>{MAX_MULTIPLICITY}", 0, beyond))
        for col, value in exp["summary"].items():
            if got[col] != value:
                out.append(Mismatch(stratum, ("summary",), col, value, got[col]))
    return out


def _expected_cells(e):
    cells = {"total": e["total"] if e else 0}
    for m in range(MAX_MULTIPLICITY + 1):
        cells[f"m{m}"] = e["mult"].get(m, 0) if e else 0
    for label, n in (e["dpf"].items() if e else ()):
        cells[f"dpf:{label}"] = n
    return cells


def _actual_cells(a, e):
    cells = {"total": a.totalAdmissible if a else 0}
    for m in range(MAX_MULTIPLICITY + 1):
        cells[f"m{m}"] = a.byMultiplicity[m] if a else 0
    for label in (e["dpf"] if e else ()):
        cells[f"dpf:{label}"] = a.dpf[label] if a else 0
    return cells


# --- export ----------------------------------------------------------------

def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, CENSUS_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def census_to_json(census):
    """JSON text for {stratum: rows}, with summary and totals per stratum."""
    out = {}
    for stratum, rows in census.items():
        out[stratum] = {
            "rows": [dict(r.cells(), dpf=dict(sorted(r.dpf.items()))) for r in rows],
            "summary": summary(rows),
            "totals": list(field_totals(rows)),
        }
    return json.dumps(out, indent=2, sort_keys=False)


def diff_to_text(mismatches):
    if not mismatches:
        return "no mismatches\n"
    return "".join(f"{m}\n" for m in mismatches)
