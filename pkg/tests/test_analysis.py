import math

import numpy as np
import pytest

from weylsections.analysis import (INF, NoUniqueOptimum, OrderProfile, classes_per_profile,
                                   conjugacy_invariants, conjugate_section, enumerate_profiles,
                                   find_conjugator, hasse_edges, invariant_lattice, lift_order,
                                   maximal_profiles, optimal_profile, optimal_section,
                                   profile_order, profile_report, random_specialization,
                                   realize_profile, same_class, section_profile,
                                   specialize_family)
from weylsections.extweyl import satisfies_braid, tits_section
from weylsections.intmat import hermite_rows, row_lattice_equal
from weylsections.lattice import build_lattice
from weylsections.solver import solve_lattice
from weylsections.extweyl import Section
from weylsections.torus import TorusElement, specialize

from conftest import small_lattices


def fam_of(t, r, iso="sc", M=24):
    return solve_lattice(build_lattice(t, iso, r), M)


def P(*labels):
    return OrderProfile(labels)


def test_order_profile_validation():
    assert str(P(2, INF)) == "(2,∞)"
    assert P("inf", 4).labels == (INF, 4)
    with pytest.raises(ValueError):
        P(3, 2)


def test_profile_order():
    assert profile_order((2, 4), (4, 2)) == "incomparable"
    assert profile_order((2, 2), (2, 4)) == "greater"
    assert profile_order((4, INF), (4, 4)) == "less"
    assert profile_order((4, 4), (4, 4)) == "equal"
    assert optimal_profile([P(4, 4)]) == P(4, 4)
    with pytest.raises(NoUniqueOptimum):
        optimal_profile([P(2, 4), P(4, 2)])


def test_strict_reading_loses_uniqueness():
    g2 = [P(2, 2), P(2, 4), P(4, 2), P(4, 4)]
    assert maximal_profiles(g2) == [P(2, 2)]
    assert len(maximal_profiles(g2, strict=True)) == 3


def test_g2_diamond():
    fam = fam_of("G", 2)
    ps = enumerate_profiles(fam)
    assert ps == {P(2, 2), P(2, 4), P(4, 2), P(4, 4)}
    edges = set(hasse_edges(ps))
    assert edges == {(P(2, 4), P(2, 2)), (P(4, 2), P(2, 2)), (P(4, 4), P(2, 4)), (P(4, 4), P(4, 2))}
    assert optimal_profile(ps) == P(2, 2)
    # the optimal G2 section is a homomorphism: both lifts square to 1
    assert section_profile(optimal_section(fam)) == P(2, 2)


def test_f4_profiles_and_optimum():
    fam = fam_of("F", 4)
    assert enumerate_profiles(fam) == {P(4, 4, 2, 2), P(4, 4, 4, 4)}
    S = optimal_section(fam)
    assert S.values[2].zeta.tolist()[3] == 12  # x = -1


def test_tits_section_profiles():
    # the Tits section squares to alpha^vee(-1): order 4 unless that is trivial
    assert section_profile(tits_section(build_lattice("A", "adjoint", 1))) == P(2)
    assert section_profile(tits_section(build_lattice("G", "sc", 2))) == P(4, 4)


@pytest.mark.parametrize("t,r,iso", [("A", 3, "adjoint"), ("A", 6, "sc"), ("D", 3, "sc")])
def test_family_rows_have_infinite_profile(t, r, iso):
    ps = enumerate_profiles(fam_of(t, r, iso))
    assert P(*[INF] * r) in ps
    assert all(len(set(p.labels)) == 1 for p in ps)


@pytest.mark.parametrize("t,r,iso,M,expected", [
    ("A", 6, "sc", 24, {2 * d for d in (1, 2, 3, 4, 6, 8, 12, 24)}),
    ("A", 7, "sc", 24, {4, 8, 12, 24}),
    ("A", 7, "sc", 48, {4, 8, 12, 16, 24, 48}),
    ("D", 3, "adjoint", 48, {2 * d for d in (1, 2, 3, 4, 6, 8, 12, 16, 24, 48)}),
])
def test_family_label_sets_exact(t, r, iso, M, expected):
    fam = fam_of(t, r, iso, M)
    got = {p.labels[0] for p in enumerate_profiles(fam, M) if p.is_finite()}
    assert got == expected


def test_lift_order_invariant_under_conjugation(rng):
    for lat in small_lattices():
        fam = solve_lattice(lat, 12)
        for _ in range(4):
            S = random_specialization(fam, 12, rng)
            t = TorusElement(S.group, rng.integers(0, 12, lat.rank))
            S2 = conjugate_section(S, t)
            assert satisfies_braid(S2)
            assert section_profile(S2) == section_profile(S)
            assert same_class(fam, S, S2)


def test_realize_every_profile():
    for t, r, iso in [("B", 6, "adjoint"), ("C", 6, "sc"), ("E", 6, "sc"), ("D", 4, "coweight:4")]:
        fam = fam_of(t, r, iso)
        M = math.lcm(24, fam.min_modulus)
        for p in (q for q in enumerate_profiles(fam, M) if q.is_finite()):
            S = realize_profile(fam, p, M)
            assert satisfies_braid(S) and section_profile(S) == p


def test_profile_report_indices():
    rep = profile_report(fam_of("G", 2), classes=True)
    assert rep.optimal == P(2, 2)
    assert len(rep.hasse) == 4
    assert dict(rep.class_counts) == {p: 1 for p in rep.profiles}


# ----------------------------------------------------------------- conjugacy

def _classifier_lattice(fam, monomials):
    n = fam.rank
    R = hermite_rows(fam.constraints.matrix)
    rows = [np.asarray(R, dtype=object)]
    for mono in monomials:
        v = np.zeros(n * n, dtype=object)
        for (i, j), e in mono.items():
            v[(i - 1) * n + (j - 1)] += e
        rows.append(v[None, :])
    return np.concatenate(rows, axis=0)


@pytest.mark.parametrize("t,r,iso,monomials", [
    ("G", 2, "sc", [{(1, 2): 1}, {(2, 1): 1}]),
    ("F", 4, "sc", [{(3, 4): 1}]),
    ("A", 4, "adjoint", [{(1, 1): 1, (1, 2): 2}]),
    ("A", 7, "adjoint", [{(1, 1): 1, (1, 2): 2}]),
    ("C", 6, "adjoint", [{(1, 1): 1, (1, 2): 2}]),
    ("E", 8, "sc", []),
])
def test_invariants_match_classifier(t, r, iso, monomials):
    fam = fam_of(t, r, iso)
    inv = conjugacy_invariants(fam)
    assert len(inv) == len(monomials)
    assert row_lattice_equal(invariant_lattice(fam, inv), _classifier_lattice(fam, monomials))


def test_c_adjoint_single_order_two_invariant():
    inv = conjugacy_invariants(fam_of("C", 6, "adjoint"))
    assert inv.orders == (2,)


def test_g2_b_separates_classes():
    fam = fam_of("G", 2)
    names = fam.group.params
    base = {p: 0 for p in names}
    S1 = specialize_family(fam, base, 24)
    S2 = specialize_family(fam, {**base, "a[1,2]": 12}, 24)
    assert not same_class(fam, S1, S2)
    assert find_conjugator(S1, S2) is None


def test_e8_all_conjugate(rng):
    fam = fam_of("E", 8)
    S1, S2 = random_specialization(fam, 24, rng), random_specialization(fam, 24, rng)
    assert same_class(fam, S1, S2)


def test_same_class_matches_conjugator_search(rng):
    for lat in small_lattices():
        for M in (2, 4):
            fam = solve_lattice(lat, M)
            for _ in range(3):
                S1, S2 = random_specialization(fam, M, rng), random_specialization(fam, M, rng)
                found = find_conjugator(S1, S2)
                assert same_class(fam, S1, S2) == (found is not None)
                if found is not None:
                    N = found.group.modulus
                    lift = lambda S: Section(S.lat, tuple(specialize(v, [], N) for v in S.values))
                    assert conjugate_section(lift(S1), found) == lift(S2)


def test_classes_per_profile_g2_and_c():
    assert set(classes_per_profile(fam_of("G", 2)).values()) == {1}
    counts = classes_per_profile(fam_of("C", 6, "adjoint"))
    assert sorted(counts.values()) == [1, 1]
