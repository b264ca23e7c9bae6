import pytest

from weylsections.analysis import OrderProfile
from weylsections.tables import (EXPECTED_ROWS, check_case, check_rows_unique, expand_pattern,
                                 lookup_row, mutate_row, table_cases, verify)


def test_expand_pattern():
    assert expand_pattern("4* 2", 5) == OrderProfile((4, 4, 4, 4, 2))
    assert expand_pattern("2 4*", 4) == OrderProfile((2, 4, 4, 4))
    assert expand_pattern("4 4 2 2", 4) == OrderProfile((4, 4, 2, 2))
    assert expand_pattern("2 4* 2", 2) == OrderProfile((2, 2))
    with pytest.raises(ValueError):
        expand_pattern("4* 2*", 5)
    with pytest.raises(ValueError):
        expand_pattern("4 4", 3)


def test_rows_unique():
    check_rows_unique()
    with pytest.raises(ValueError, match="duplicate"):
        check_rows_unique(EXPECTED_ROWS + (EXPECTED_ROWS[0],))


def test_scope_sizes():
    summary, low, everything = (table_cases(s) for s in ("summary", "lowrank", "all"))
    assert len(low) == 7
    assert len(everything) == len(summary) + len(low)
    keys = {c.key for c in everything}
    assert len(keys) == len(everything)
    for k in ("G2 sc", "F4 sc", "E8 sc", "A8 middle:3", "D3 adjoint", "A1 sc"):
        assert k in keys
    with pytest.raises(ValueError):
        table_cases("nope")


def test_summary_ranks():
    for c in table_cases("summary"):
        if c.row.rank is not None:
            assert c.rank == c.row.rank
        else:
            assert c.rank in (6, 7) or c.key == "A8 middle:3"


def test_lookup():
    assert lookup_row("A", 7, "middle:4").family == "4j"
    assert lookup_row("A", 1, "sc").patterns == ("4",)
    assert lookup_row("G", 2, "sc").table == "summary"


def test_verify_lowrank():
    rep = verify("lowrank")
    assert rep.ok, rep.failures()
    assert len(rep.results) == 7


@pytest.mark.parametrize("key", ["G2", "F4", "E8"])
def test_exceptional_rows(key):
    rows = [c for c in table_cases("summary") if c.row.key == key]
    assert rows
    for c in rows:
        assert check_case(c).ok


def test_mutation_is_caught():
    rows = mutate_row(EXPECTED_ROWS, "F4", patterns=("4 4 2 2",))
    res = [check_case(c) for c in table_cases("summary", rows) if c.row.key == "F4"]
    assert len(res) == 1 and not res[0].ok
    assert res[0].diffs == ["[F4] unexpected (4,4,4,4)"]


def test_family_row_mutation():
    rows = mutate_row(EXPECTED_ROWS, "A middle a even", family="2j")
    case = next(c for c in table_cases("summary", rows) if c.key == "A7 middle:4")
    assert not check_case(case).ok


def test_mutate_unknown_key():
    with pytest.raises(KeyError):
        mutate_row(EXPECTED_ROWS, "Z9")
