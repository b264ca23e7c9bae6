"""Lift checks ``S(w)^r = S(w^r)`` for elements generating the Kottwitz subgroup.

Only the Weyl-level statement is modelled: the torus factors coming from the
uniformizer play no role in whether a section lifts the subgroup generated
by ``w``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .extweyl import (ExtendedElement, Section, ext_pow, fw_mask, section_eval)
from .rootsys import (RootSystem, WeylWord, as_word, build_root_system, element_order,
                      length, longest_element, multiply, power, reduce_word,
                      same_element, word_from_matrix)
from .torus import TorusElement, t_inv, t_mul


def fw_set(sys: RootSystem, w, i: int) -> frozenset[tuple[int, ...]]:
    """Positive roots ``gamma`` with ``w^i(gamma) < 0`` and ``w^{i+1}(gamma) > 0``."""
    if i < 1:
        raise ValueError("i must be at least 1")
    mask = fw_mask(sys, w, i)
    return frozenset(sys.positive_coords[k] for k in np.flatnonzero(mask))


@dataclass
class LiftCheckReport:
    element: WeylWord
    r_max: int
    results: dict[int, bool] = field(default_factory=dict)
    discrepancies: dict[int, TorusElement] = field(default_factory=dict)
    lattice: str = ""
    section: str = ""

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[int]:
        return [r for r, ok in sorted(self.results.items()) if not ok]


def lift_check(S: Section, w, r_max: int | None = None, label: str = "") -> LiftCheckReport:
    """Compare ``S(w)^r`` with ``S(w^r)`` for ``r = 1..r_max``.

    ``r_max`` defaults to the order of ``w`` in W. A failing ``r`` records the
    torus ratio ``S(w)^r * S(w^r)^{-1}``.
    """
    sys = S.lat.sys
    w = reduce_word(sys, w)
    if r_max is None:
        r_max = element_order(sys, w)
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    base = section_eval(S, w)
    report = LiftCheckReport(w, r_max, lattice=S.lat.name, section=label)
    acc = base
    for r in range(1, r_max + 1):
        if r > 1:
            acc = ext_pow(S.lat, base, r)
        rhs = section_eval(S, power(sys, w, r), check=False)
        ok = acc == rhs
        report.results[r] = ok
        if not ok:
            report.discrepancies[r] = t_mul(acc.t, t_inv(rhs.t))
    return report


def cn_adjoint_element(n: int) -> WeylWord:
    """Reduced word ``(s_n)(s_{n-1} s_n)(s_{n-2} s_{n-1} s_n) ... (s_1 ... s_n)``
    for ``w_{Pi_n} w_Pi`` in type C_n, where ``w_{Pi_n}`` is the longest element
    of the parabolic subgroup without node ``n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    letters: list[int] = []
    for start in range(n, 0, -1):
        letters.extend(range(start, n + 1))
    word = WeylWord(tuple(letters))
    sys = build_root_system("C", n)
    if length(sys, word) != len(word):
        raise ArithmeticError("block word is not reduced")
    target = multiply(sys, longest_element(sys, range(1, n)), longest_element(sys))
    if not same_element(sys, word, target):
        raise ArithmeticError("block word does not equal w_{Pi_n} w_Pi")
    return WeylWord(word.letters, True)


def permutation_word(sys: RootSystem, perm: dict[int, int]) -> WeylWord:
    """Reduced word of the type-A element with ``w(e_j) = e_{perm[j]}``."""
    if sys.type_tag != "A":
        raise ValueError("permutations describe Weyl elements of type A only")
    n = sys.rank
    cols = []
    for j in range(1, n + 1):
        v = [0] * (n + 1)
        v[perm[j] - 1] += 1
        v[perm[j + 1] - 1] -= 1
        cols.append(sys.coords_of(v))
    return word_from_matrix(sys, np.array(cols, dtype=np.int64).T)


def cycle_permutation(n_letters: int, cycle_length: int, a: int) -> dict[int, int]:
    """``a``-th power of the cycle ``(1 2 ... cycle_length)`` on ``n_letters`` letters."""
    out = {}
    for j in range(1, n_letters + 1):
        out[j] = j if j > cycle_length else (j - 1 + a) % cycle_length + 1
    return out


def an_cycle_power(n: int, a: int, cycle_length: int | None = None) -> WeylWord:
    """Reduced word of ``w_a``, the ``a``-th power of a cycle, in W(A_n).

    By default the cycle is ``(1 2 ... n+1)`` on all ``n + 1`` letters; pass
    ``cycle_length=n`` for the cycle on the first ``n`` letters.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if (n + 1) % a or not 1 < a < n + 1:
        raise ValueError(f"a = {a} must divide {n + 1} with 1 < a < {n + 1}")
    L = n + 1 if cycle_length is None else cycle_length
    if L not in (n, n + 1):
        raise ValueError("cycle_length must be n or n+1")
    sys = build_root_system("A", n)
    return permutation_word(sys, cycle_permutation(n + 1, L, a))


def displayed_fw_sum(n_letters: int, a: int, i: int) -> list[int]:
    """``a*i*(e_{N-a(i+1)+1} + ... + e_{N-ai}) - a*(e_{N-ai+1} + ... + e_N)``
    as a vector of length ``n_letters`` (indices outside ``1..N`` dropped)."""
    N = n_letters
    v = [0] * N
    for k in range(N - a * (i + 1) + 1, N - a * i + 1):
        if 1 <= k <= N:
            v[k - 1] += a * i
    for k in range(N - a * i + 1, N + 1):
        if 1 <= k <= N:
            v[k - 1] -= a
    return v


def fw_coroot_sum(sys: RootSystem, w, i: int) -> list[int]:
    """Sum of the coroots over ``F_w(i)`` in ambient coordinates (type A: coroot = root)."""
    total = [0] * sys.ambient_dim
    for c in fw_set(sys, w, i):
        amb = sys.ambient(sys.coroot_coords(c)) if sys.type_tag == "A" else None
        if amb is None:
            raise ValueError("ambient coroot sums are provided for type A")
        for k, x in enumerate(amb):
            total[k] += int(x)
    return total


def cycle_candidates(n: int, a: int) -> dict[str, dict]:
    """Compare both cycle readings of ``w_a`` with the displayed F-sum formula.

    For each candidate cycle length, the formula is evaluated with its index
    read as the number of letters of that cycle; returns per-candidate match
    flags for ``i = 1 .. ord(w_a) - 1`` and whether the Tits lift of ``w_a``
    satisfies the power condition.
    """
    sys = build_root_system("A", n)
    out = {}
    for L, label in ((n + 1, "(n+1)-cycle"), (n, "n-cycle")):
        w = an_cycle_power(n, a, L)
        o = element_order(sys, w)
        matches = []
        for i in range(1, o):
            shown = displayed_fw_sum(L, a, i) + [0] * (n + 1 - L)
            matches.append(fw_coroot_sum(sys, w, i) == shown)
        out[label] = {"word": w, "order": o, "matches": matches,
                      "all_match": all(matches), "even_sums": all(
                          all(x % 2 == 0 for x in fw_coroot_sum(sys, w, i)) for i in range(1, o))}
    return out
