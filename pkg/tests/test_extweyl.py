import numpy as np
import pytest

from weylsections.extweyl import (cocycle_right, ext, ext_inv, ext_mul, ext_pow, fset,
                                  section_eval, section_eval_word, tits_cocycle, tits_lift,
                                  tits_power_discrepancy, tits_section, braid_defects)
from weylsections.lattice import build_lattice
from weylsections.rootsys import (WeylWord, build_root_system, elements, power, random_word,
                                  reduced_words, reduce_word)
from weylsections.torus import MonomialGroup, TorusElement, apply_matrix, t_mul

from conftest import small_lattices

CASES = [("A", 3, "sc"), ("B", 3, "adjoint"), ("C", 3, "adjoint"), ("D", 4, "coweight:4"),
         ("G", 2, "sc"), ("A", 3, "adjoint")]


def test_fset_examples():
    sys = build_root_system("A", 2)
    assert fset(sys, WeylWord(()), WeylWord((1,))) == frozenset()
    # s1 s1 = 1: the root alpha_1 is flipped by s1 and flipped back
    assert fset(sys, WeylWord((1,)), WeylWord((1,))) == {(1, 0)}


@pytest.mark.parametrize("t,r,iso", CASES)
def test_cocycle_identity(t, r, iso, rng):
    lat = build_lattice(t, iso, r)
    g = MonomialGroup()
    for _ in range(80):
        u, v, x = (random_word(lat.sys, 8, rng) for _ in range(3))
        lhs = t_mul(tits_cocycle(lat, u, v, g), tits_cocycle(lat, u * v, x, g))
        rhs = t_mul(apply_matrix(lat.word_matrix(u), tits_cocycle(lat, v, x, g)),
                    tits_cocycle(lat, u, v * x, g))
        assert lhs == rhs


@pytest.mark.parametrize("t,r,iso", CASES)
def test_product_against_simple_lift_oracle(t, r, iso, rng):
    """N(u) N(v) from the general formula equals the product of simple lifts
    along the concatenated word, which only uses sigma_i^2 = alpha_i^vee(-1)."""
    lat = build_lattice(t, iso, r)
    S = tits_section(lat)
    for _ in range(60):
        u = reduce_word(lat.sys, random_word(lat.sys, 9, rng))
        v = reduce_word(lat.sys, random_word(lat.sys, 9, rng))
        oracle = section_eval_word(S, u.letters + v.letters)
        formula = ext_mul(lat, tits_lift(lat, u), tits_lift(lat, v))
        assert oracle == formula
        rhs = tits_lift(lat, u * v)
        assert formula.t == t_mul(rhs.t, apply_matrix(lat.word_matrix(u * v),
                                                      cocycle_right(lat, u, v)))


@pytest.mark.parametrize("t,r,iso", CASES)
def test_powers_formula(t, r, iso, rng):
    lat = build_lattice(t, iso, r)
    g = MonomialGroup()
    for _ in range(40):
        w = random_word(lat.sys, 10, rng)
        n = int(rng.integers(1, 7))
        lhs = ext_pow(lat, tits_lift(lat, w, g), n)
        base = tits_lift(lat, power(lat.sys, w, n), g)
        disc = tits_power_discrepancy(lat, w, n, g)
        assert lhs.w == base.w
        assert lhs.t == t_mul(base.t, apply_matrix(lat.word_matrix(lhs.w), disc))


@pytest.mark.parametrize("t,r,iso", CASES)
def test_reduced_word_independence(t, r, iso):
    lat = build_lattice(t, iso, r)
    S = tits_section(lat)
    sys = lat.sys
    for w in elements(sys)[:: max(1, len(elements(sys)) // 25)]:
        vals = {section_eval_word(S, rw.letters) for rw in reduced_words(sys, w)}
        assert len(vals) == 1


def test_tits_satisfies_braid_everywhere():
    for lat in small_lattices():
        assert all(d.is_identity() for d in braid_defects(tits_section(lat)).values())
    for t, r in [("F", 4), ("E", 6)]:
        lat = build_lattice(t, "sc", r)
        assert all(d.is_identity() for d in braid_defects(tits_section(lat)).values())


def test_group_axioms(rng):
    lat = build_lattice("B", "adjoint", 3)
    g = MonomialGroup(24, ("p",))
    def rand():
        t = TorusElement(g, rng.integers(0, 24, 3), rng.integers(-2, 3, (3, 1)))
        return ext(lat, t, random_word(lat.sys, 6, rng))
    for _ in range(30):
        a, b, c = rand(), rand(), rand()
        assert ext_mul(lat, ext_mul(lat, a, b), c) == ext_mul(lat, a, ext_mul(lat, b, c))
        e = ext_mul(lat, a, ext_inv(lat, a))
        assert not e.w.letters and e.t.is_identity()


def test_section_eval_requires_braid():
    lat = build_lattice("A", "sc", 2)
    g = MonomialGroup()
    from weylsections.extweyl import Section
    bad = Section(lat, (TorusElement(g, [0, 6]), TorusElement(g, [0, 0])))
    with pytest.raises(ValueError):
        section_eval(bad, WeylWord((1, 2)))
