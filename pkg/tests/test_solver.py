import time

import numpy as np
import pytest

from weylsections.analysis import square_of_lift
from weylsections.lattice import all_isogenies, build_lattice
from weylsections.solver import (alternating, brute_force_sections, family_points,
                                 generate_constraints, solve_lattice, var_name, verify_family)
from weylsections.torus import specialize

from conftest import small_lattices


def test_alternating_words():
    assert alternating(1, 2, 3) == (1, 2, 1)
    assert alternating(2, 1, 4) == (2, 1, 2, 1)
    assert var_name(3, 4) == "a[3,4]"


def test_g2_family():
    fam = solve_lattice(build_lattice("G", "sc", 2))
    assert fam.free_params == ("a[1,1]", "a[2,2]")
    assert fam.torsion_params == (("a[1,2]", 2), ("a[2,1]", 2))
    assert [str(v) for v in fam.values] == ["(a[1,1], a[1,2])", "(a[2,1], a[2,2])"]
    assert fam.min_modulus == 2


def test_f4_family():
    fam = solve_lattice(build_lattice("F", "sc", 4))
    assert fam.torsion_params == (("a[3,4]", 2),)
    assert len(fam.free_params) == 4
    assert [str(v) for v in fam.values] == [
        "(a[1,1], 1, 1, 1)", "(1, a[2,2], 1, 1)", "(1, 1, a[3,3], a[3,4])", "(1, 1, a[3,4], a[4,4])"]
    sq = square_of_lift(fam.lat, fam.values[0], 1)
    assert specialize(sq, {"a[1,1]": 5, "a[2,2]": 1, "a[3,3]": 7, "a[4,4]": 0, "a[3,4]": 12}
                      ).zeta.tolist() == [12, 0, 0, 0]


def test_e8_family():
    lat = build_lattice("E", "sc", 8)
    t0 = time.perf_counter()
    cs = generate_constraints(lat)
    fam = solve_lattice(lat)
    assert time.perf_counter() - t0 < 30
    assert cs.nrows == 28 * 8
    assert len(fam.free_params) == 8 and fam.torsion_params == ()
    assert verify_family(fam)


def test_e6_sc_has_order_three_torsion():
    fam = solve_lattice(build_lattice("E", "sc", 6))
    assert [d for _, d in fam.torsion_params] == [3]
    assert fam.min_modulus == 6
    assert verify_family(fam)


@pytest.mark.parametrize("t,r", [("A", 4), ("B", 4), ("C", 4), ("D", 5), ("D", 4), ("E", 7), ("F", 4)])
def test_families_satisfy_braid_symbolically(t, r):
    for iso in all_isogenies(t, r):
        assert verify_family(solve_lattice(build_lattice(t, iso, r)))


def test_constraint_constants_vanish():
    for lat in small_lattices():
        assert not generate_constraints(lat).constants.any()


def test_brute_force_matches_family_small():
    for lat in small_lattices(max_rank=2):
        fam = solve_lattice(lat)
        for M in (2, 4, 6):
            assert brute_force_sections(lat, M) == family_points(fam, M)


def test_brute_force_guards():
    with pytest.raises(ValueError):
        brute_force_sections(build_lattice("A", "sc", 4), 2)
    with pytest.raises(ValueError):
        brute_force_sections(build_lattice("A", "sc", 3), 6)
    with pytest.raises(ValueError):
        brute_force_sections(build_lattice("A", "sc", 2), 3)


def test_g2_point_count():
    fam = solve_lattice(build_lattice("G", "sc", 2))
    assert len(family_points(fam, 2)) == 16
    assert len(family_points(fam, 4)) == 4 * 4 * 2 * 2
