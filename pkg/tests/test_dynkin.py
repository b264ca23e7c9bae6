import pytest

from weylsections.dynkin import layout, render

SHAPES = [("A", 4), ("B", 3), ("C", 5), ("D", 4), ("D", 6), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("t,n", SHAPES)
def test_every_node_once(t, n):
    chain, bonds, branch = layout(t, n)
    nodes = chain + ([branch[0]] if branch else [])
    assert sorted(nodes) == list(range(1, n + 1))
    assert len(bonds) == len(chain) - 1


def test_arrow_directions():
    assert layout("B", 4)[1][-1] == "=>"
    assert layout("C", 4)[1][-1] == "<="
    assert layout("F", 4)[1] == ["-", "=>", "-"]
    assert layout("D", 5)[2] == (5, 3)
    assert layout("E", 7)[2] == (2, 4)


def test_render_labels_line_up():
    out = render("B", 3, [2, 4, "inf"]).splitlines()
    top, mid = out
    for node, lab in zip("123", ["2", "4", "inf"]):
        assert top.index(node) == mid.index(lab)


def test_render_branch():
    out = render("E", 6, [1, 2, 3, 4, 5, 6]).splitlines()
    assert out[0].split() == ["1", "3", "4", "5", "6"]
    assert out[-1].strip() == "2  (2)"
    assert out[-2].index("|") == out[0].index("4")


def test_render_errors():
    with pytest.raises(ValueError):
        render("A", 3, [1, 2])
    with pytest.raises(ValueError):
        layout("Z", 3)
