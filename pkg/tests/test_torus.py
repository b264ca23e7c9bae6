import math

import numpy as np
import pytest

from weylsections.lattice import build_lattice
from weylsections.rootsys import WeylWord
from weylsections.torus import (MonomialGroup, TorusElement, apply_matrix, constant,
                                coroot_eval_minus1, identity, order, specialize, t_inv, t_mul,
                                t_pow, weyl_act)


def test_group_requires_even_modulus():
    with pytest.raises(ValueError):
        MonomialGroup(7)
    with pytest.raises(ValueError):
        MonomialGroup(24, ("a",), (0, 2))


def test_arithmetic_and_immutability():
    g = MonomialGroup(12, ("a", "b"), (0, 2))
    x = TorusElement(g, [6, 1], [[1, 0], [0, 3]])
    assert x.exps[1, 1] == 1  # reduced mod the order 2 of b
    assert t_mul(x, t_inv(x)).is_identity()
    assert t_pow(x, 2) == x * x
    with pytest.raises(AttributeError):
        x.zeta = None
    assert str(x) == "(-a, ζ12*b)"
    assert len({x, TorusElement(g, [6, 1], [[1, 0], [0, 1]])}) == 1


def test_weyl_action():
    lat = build_lattice("A", "sc", 2)
    g = MonomialGroup(24, ("u",))
    t = TorusElement(g, [0, 0], [[1], [0]])
    assert weyl_act(lat, WeylWord((1,)), t).exps[:, 0].tolist() == [-1, 0]
    # s1 sends the alpha_2 coroot to alpha_1 + alpha_2 coroots
    t2 = TorusElement(g, [0, 0], [[0], [1]])
    assert weyl_act(lat, WeylWord((1,)), t2).exps[:, 0].tolist() == [1, 1]
    assert weyl_act(lat, WeylWord((1, 1)), t) == t


def test_coroot_minus_one():
    lat = build_lattice("C", "sc", 2)
    assert coroot_eval_minus1(lat, 2).zeta.tolist() == [0, 12]
    adj = build_lattice("A", "adjoint", 1)
    assert coroot_eval_minus1(adj, 1).is_identity()


def test_specialize_and_order():
    g = MonomialGroup(24, ("a", "x"), (0, 2))
    t = TorusElement(g, [12, 0], [[1, 0], [0, 1]])
    assert order(t) == math.inf
    s = specialize(t, {"a": 8, "x": 12})
    assert s.zeta.tolist() == [20, 12]
    assert order(s) == 6
    with pytest.raises(ValueError):
        specialize(t, {"a": 1, "x": 5})  # x has order 2
    with pytest.raises(KeyError):
        specialize(t, {"a": 1})
    torsion_only = TorusElement(g, [0, 0], [[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        order(torsion_only)
    assert order(specialize(torsion_only, [0, 24], 48)) == 2


def test_apply_matrix_matches_weyl():
    lat = build_lattice("G", "sc", 2)
    g = MonomialGroup()
    t = constant(g, [3, 5])
    w = WeylWord((1, 2, 1))
    assert weyl_act(lat, w, t) == apply_matrix(lat.word_matrix(w), t)
    assert identity(g, 2).is_constant()
