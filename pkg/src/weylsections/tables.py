"""Expected order profiles, encoded as data, and a recompute-and-diff checker.

Rows come in two kinds. A *fixed* row lists its profiles with a compact
pattern per profile (``"4* 2"`` is every node 4 except a trailing 2). A
*family* row (``"2j"`` or ``"4j"``) states that every node carries the same
label, a multiple of the step; on a finite modulus only finitely many ``j``
are visible, so the check confirms ``j = 1, 2, 3`` and that the observed
labels form the progression of that step. Free parameters also yield the
all-infinite profile on family rows, which is accepted as the ``j -> oo``
end of the progression.
"""
from __future__ import annotations

import dataclasses
import time
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, lcm

from .analysis import INF, OrderProfile, enumerate_profiles
from .lattice import build_lattice, parse_isogeny
from .solver import solve_lattice
from .torus import DEFAULT_MODULUS

SCOPES = ("summary", "lowrank", "all")
SUMMARY_RANKS = (6, 7)
FAMILY_J = (1, 2, 3)


@dataclass(frozen=True)
class TableRow:
    key: str
    type_tag: str
    isogeny: str  # sc, adjoint, middle, coweight:1, coweight:n-1, coweight:n
    condition: str = ""  # "", "n odd", "n even", "a odd", "a even"
    patterns: tuple[str, ...] = ()
    family: str | None = None  # "2j" / "4j"
    table: str = "summary"
    rank: int | None = None  # fixed-rank rows (exceptional types, low rank)

    def expected(self, rank: int) -> set[OrderProfile]:
        return {expand_pattern(p, rank) for p in self.patterns}


@dataclass(frozen=True)
class TableCase:
    row: TableRow
    type_tag: str
    rank: int
    isogeny: str

    @property
    def key(self) -> str:
        return f"{self.type_tag}{self.rank} {self.isogeny}"


@dataclass
class RowResult:
    case: TableCase
    modulus: int
    observed: list[OrderProfile]
    diffs: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.diffs


@dataclass
class VerifyReport:
    scope: str
    results: list[RowResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[RowResult]:
        return [r for r in self.results if not r.ok]


def expand_pattern(pattern: str, rank: int) -> OrderProfile:
    """``"4* 2"`` -> ``(4, ..., 4, 2)``; at most one token may carry ``*``."""
    tokens = pattern.split()
    stars = [k for k, t in enumerate(tokens) if t.endswith("*")]
    if len(stars) > 1:
        raise ValueError(f"pattern {pattern!r} has more than one fill token")
    fixed = len(tokens) - len(stars)
    if stars:
        fill = rank - fixed
        if fill < 0:
            raise ValueError(f"pattern {pattern!r} is longer than rank {rank}")
        k = stars[0]
        labels = tokens[:k] + [tokens[k][:-1]] * fill + tokens[k + 1:]
    else:
        labels = tokens
    if len(labels) != rank:
        raise ValueError(f"pattern {pattern!r} does not have {rank} nodes")
    return OrderProfile(tuple(labels))


EXPECTED_ROWS: tuple[TableRow, ...] = (
    TableRow("A sc n odd", "A", "sc", "n odd", family="4j"),
    TableRow("A sc n even", "A", "sc", "n even", family="2j"),
    TableRow("A middle a even", "A", "middle", "a even", family="4j"),
    TableRow("A middle a odd", "A", "middle", "a odd", family="2j"),
    TableRow("A adjoint", "A", "adjoint", family="2j"),
    TableRow("B sc n even", "B", "sc", "n even", ("4* 2", "4*")),
    TableRow("B sc n odd", "B", "sc", "n odd", ("4*",)),
    TableRow("B adjoint", "B", "adjoint", "", ("2*", "4* 2")),
    TableRow("C sc", "C", "sc", "", ("2* 4", "4*")),
    TableRow("C adjoint", "C", "adjoint", "", ("2* 4", "4*")),
    TableRow("D sc", "D", "sc", "", ("4*",)),
    TableRow("D coweight 1", "D", "coweight:1", "", ("2*", "4*")),
    TableRow("D coweight n-1", "D", "coweight:n-1", "n even", ("4*",)),
    TableRow("D coweight n", "D", "coweight:n", "n even", ("4*",)),
    TableRow("D adjoint", "D", "adjoint", "", ("2*", "4*")),
    TableRow("F4", "F", "sc", "", ("4 4 2 2", "4 4 4 4"), rank=4),
    TableRow("G2", "G", "sc", "", ("2 2", "2 4", "4 2", "4 4"), rank=2),
    TableRow("E8", "E", "sc", "", ("4*",), rank=8),
    TableRow("E7 sc", "E", "sc", "", ("4*",), rank=7),
    TableRow("E7 adjoint", "E", "adjoint", "", ("4*",), rank=7),
    TableRow("E6 sc", "E", "sc", "", ("4*", "12*"), rank=6),
    TableRow("E6 adjoint", "E", "adjoint", "", ("4*",), rank=6),
    TableRow("A1 sc", "A", "sc", "", ("4",), table="lowrank", rank=1),
    TableRow("A1 adjoint", "A", "adjoint", "", ("2",), table="lowrank", rank=1),
    TableRow("D3 sc", "D", "sc", "", family="4j", table="lowrank", rank=3),
    TableRow("D3 adjoint", "D", "adjoint", "", family="2j", table="lowrank", rank=3),
    TableRow("D3 coweight 1", "D", "coweight:1", "", family="2j", table="lowrank", rank=3),
    TableRow("D4 coweight 4", "D", "coweight:4", "", ("2*", "4*"), table="lowrank", rank=4),
    TableRow("D4 coweight 3", "D", "coweight:3", "", ("2*", "4*"), table="lowrank", rank=4),
)

# The odd-a middle isogeny of type A first occurs at rank 8 (n + 1 = 9, a = 3),
# so the summary sweep adds that single case beyond ranks 6 and 7.
EXTRA_SUMMARY_CASES = (("A", 8, "middle:3"),)


def _middle_params(rank: int) -> list[int]:
    return [a for a in range(2, rank + 1) if (rank + 1) % a == 0]


def _matches(row: TableRow, rank: int, iso: str) -> bool:
    if row.type_tag == "A" and row.isogeny == "middle":
        if not iso.startswith("middle:"):
            return False
        a = int(iso.split(":")[1])
        return row.condition == ("a even" if a % 2 == 0 else "a odd")
    if row.condition == "n odd" and rank % 2 == 0:
        return False
    if row.condition == "n even" and rank % 2:
        return False
    tag = row.isogeny.replace("n-1", str(rank - 1)).replace(":n", f":{rank}")
    return tag == iso


def _row_isogenies(row: TableRow, rank: int) -> list[str]:
    if row.isogeny == "middle":
        return [f"middle:{a}" for a in _middle_params(rank)]
    tag = row.isogeny.replace("n-1", str(rank - 1)).replace(":n", f":{rank}")
    return [tag]


def table_cases(scope: str = "all", rows: tuple[TableRow, ...] = EXPECTED_ROWS) -> list[TableCase]:
    """Concrete (type, rank, isogeny) instances of the rows in ``scope``,
    sorted by case key."""
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {', '.join(SCOPES)}")
    out: list[TableCase] = []
    for row in rows:
        if scope != "all" and row.table != scope:
            continue
        ranks = [row.rank] if row.rank else list(SUMMARY_RANKS)
        for r in ranks:
            for iso in _row_isogenies(row, r):
                if _matches(row, r, iso):
                    out.append(TableCase(row, row.type_tag, r, iso))
        for t, r, iso in EXTRA_SUMMARY_CASES:
            if t == row.type_tag and row.rank is None and _matches(row, r, iso):
                out.append(TableCase(row, t, r, iso))
    out.sort(key=lambda c: (c.type_tag, c.rank, c.isogeny))
    return out


def check_rows_unique(rows: tuple[TableRow, ...] = EXPECTED_ROWS) -> None:
    seen = set()
    for row in rows:
        k = (row.table, row.type_tag, row.isogeny, row.condition, row.rank)
        if k in seen:
            raise ValueError(f"duplicate table row {row.key}")
        seen.add(k)
    keys = [r.key for r in rows]
    if len(set(keys)) != len(keys):
        raise ValueError("duplicate row keys")


def _family_diffs(row: TableRow, observed: set[OrderProfile], rank: int) -> list[str]:
    step = int(row.family[:-1])
    diffs = []
    finite = sorted((p for p in observed if p.is_finite()), key=OrderProfile.sort_key)
    infinite = [p for p in observed if not p.is_finite()]
    for p in finite:
        if len(set(p.labels)) != 1:
            diffs.append(f"non-uniform profile {p}")
    for p in infinite:
        if any(x != INF for x in p.labels):
            diffs.append(f"mixed finite/infinite profile {p}")
    labels = sorted({p.labels[0] for p in finite})
    for j in FAMILY_J:
        if step * j not in labels:
            diffs.append(f"missing uniform profile {step * j} (j = {j})")
    if labels and reduce(gcd, labels) != step:
        diffs.append(f"labels {labels} form a progression of step "
                     f"{reduce(gcd, labels)}, expected {row.family}")
    return diffs


def _fixed_diffs(row: TableRow, observed: set[OrderProfile], rank: int) -> list[str]:
    expected = row.expected(rank)
    diffs = [f"missing {p}" for p in sorted(expected - observed, key=OrderProfile.sort_key)]
    diffs += [f"unexpected {p}" for p in sorted(observed - expected, key=OrderProfile.sort_key)]
    return diffs


def case_modulus(fam, modulus: int | None = None) -> int:
    """The check modulus: at least 24, adjusted to contain every torsion order."""
    return lcm(modulus or DEFAULT_MODULUS, fam.min_modulus)


def check_case(case: TableCase, modulus: int | None = None) -> RowResult:
    t0 = time.perf_counter()
    lat = build_lattice(case.type_tag, case.isogeny, case.rank)
    fam = solve_lattice(lat, modulus or DEFAULT_MODULUS)
    M = case_modulus(fam, modulus)
    observed = enumerate_profiles(fam.with_modulus(M), M)
    if case.row.family:
        diffs = _family_diffs(case.row, observed, case.rank)
    else:
        diffs = _fixed_diffs(case.row, observed, case.rank)
    diffs = [f"[{case.row.key}] {d}" for d in diffs]
    return RowResult(case, M, sorted(observed, key=OrderProfile.sort_key), diffs,
                     time.perf_counter() - t0)


def verify(scope: str = "all", rows: tuple[TableRow, ...] = EXPECTED_ROWS,
           modulus: int | None = None) -> VerifyReport:
    return VerifyReport(scope, [check_case(c, modulus) for c in table_cases(scope, rows)])


def mutate_row(rows: tuple[TableRow, ...], key: str, **changes) -> tuple[TableRow, ...]:
    """Copy of ``rows`` with the row named ``key`` altered (for mutation tests)."""
    if key not in {r.key for r in rows}:
        raise KeyError(key)
    return tuple(dataclasses.replace(r, **changes) if r.key == key else r for r in rows)


def lookup_row(type_tag: str, rank: int, isogeny: str,
               rows: tuple[TableRow, ...] = EXPECTED_ROWS) -> TableRow | None:
    """The table row describing a case, if any. Fixed-rank rows take precedence."""
    iso = parse_isogeny(isogeny, rank).tag
    fixed = [r for r in rows if r.rank == rank and r.type_tag == type_tag and _matches(r, rank, iso)]
    if fixed:
        return fixed[0]
    if type_tag in "ABCD" and rank >= 6:
        for r in rows:
            if r.rank is None and r.type_tag == type_tag and _matches(r, rank, iso):
                return r
    return None
