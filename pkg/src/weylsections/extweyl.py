"""The torus normalizer as a twisted product ``T x_c W``.

A pair ``(t, w)`` stands for ``t * N(w)`` where ``N`` is the Tits lift built
from simple lifts ``sigma_i`` with ``sigma_i^2 = alpha_i^vee(-1)``. Products
follow from

    N(u) N(v) = N(uv) * prod_{gamma in F(u,v)} gamma^vee(-1),
    F(u, v) = {gamma > 0 : v(gamma) < 0, uv(gamma) > 0},

with the correction moved to the left of ``N(uv)`` when multiplying pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lattice import IsogenyLattice
from .rootsys import (RootSystem, WeylWord, as_word, power, reduce_word,
                      word_matrix)
from .torus import (MonomialGroup, TorusElement, apply_matrix, identity,
                    minus_one_from_vector, t_inv, t_mul)


def _fset_mask(sys: RootSystem, Mu: np.ndarray, Mv: np.ndarray) -> np.ndarray:
    P = sys.positive_matrix
    vP = Mv @ P
    uvP = Mu @ vP
    return np.any(vP < 0, axis=0) & ~np.any(uvP < 0, axis=0)


def fset(sys: RootSystem, u, v) -> frozenset[tuple[int, ...]]:
    """Positive roots ``gamma`` with ``v(gamma) < 0`` and ``uv(gamma) > 0``.

    Roots are returned as simple-root coordinate tuples.
    """
    mask = _fset_mask(sys, word_matrix(sys, u), word_matrix(sys, v))
    return frozenset(sys.positive_coords[k] for k in np.flatnonzero(mask))


def _coroot_sum(lat: IsogenyLattice, mask: np.ndarray) -> np.ndarray:
    return lat.positive_coroot_vectors[:, mask].sum(axis=1)


def cocycle_right(lat: IsogenyLattice, u, v, group: MonomialGroup | None = None) -> TorusElement:
    """``d`` with ``N(u) N(v) = N(uv) d``."""
    group = group or MonomialGroup()
    sys = lat.sys
    mask = _fset_mask(sys, word_matrix(sys, u), word_matrix(sys, v))
    return minus_one_from_vector(group, _coroot_sum(lat, mask))


def tits_cocycle(lat: IsogenyLattice, u, v, group: MonomialGroup | None = None) -> TorusElement:
    """``c`` with ``N(u) N(v) = c N(uv)``; satisfies the 2-cocycle identity
    ``c(u,v) c(uv,x) = u(c(v,x)) c(u,vx)``."""
    group = group or MonomialGroup()
    uv = as_word(u) * as_word(v)
    return apply_matrix(lat.word_matrix(uv), cocycle_right(lat, u, v, group))


@dataclass(frozen=True)
class ExtendedElement:
    """``t * N(w)`` with ``w`` kept as a canonical reduced word."""

    t: TorusElement
    w: WeylWord

    def __str__(self) -> str:
        return f"{self.t}·N({self.w})"


def ext(lat: IsogenyLattice, t: TorusElement, w=()) -> ExtendedElement:
    return ExtendedElement(t, reduce_word(lat.sys, w))


def neutral(lat: IsogenyLattice, group: MonomialGroup | None = None) -> ExtendedElement:
    return ExtendedElement(identity(group or MonomialGroup(), lat.rank), WeylWord((), True))


def is_neutral(x: ExtendedElement) -> bool:
    return not x.w.letters and x.t.is_identity()


def ext_mul(lat: IsogenyLattice, a: ExtendedElement, b: ExtendedElement) -> ExtendedElement:
    """``(t1, w1)(t2, w2) = (t1 * w1(t2) * c(w1, w2), w1 w2)``."""
    if a.t.group != b.t.group:
        raise ValueError("elements live over different monomial groups")
    if a.t.rank != lat.rank or b.t.rank != lat.rank:
        raise ValueError("element rank does not match the lattice")
    t = t_mul(t_mul(a.t, apply_matrix(lat.word_matrix(a.w), b.t)),
              tits_cocycle(lat, a.w, b.w, a.t.group))
    return ExtendedElement(t, reduce_word(lat.sys, a.w * b.w))


def ext_inv(lat: IsogenyLattice, a: ExtendedElement) -> ExtendedElement:
    winv = a.w.inverse()
    c = tits_cocycle(lat, a.w, winv, a.t.group)
    t = apply_matrix(lat.word_matrix(winv), t_inv(t_mul(a.t, c)))
    return ExtendedElement(t, reduce_word(lat.sys, winv))


def ext_pow(lat: IsogenyLattice, a: ExtendedElement, n: int) -> ExtendedElement:
    if n < 0:
        return ext_pow(lat, ext_inv(lat, a), -n)
    out = neutral(lat, a.t.group)
    for _ in range(n):
        out = ext_mul(lat, out, a)
    return out


def simple_lift(lat: IsogenyLattice, i: int, t: TorusElement | None = None,
                group: MonomialGroup | None = None) -> ExtendedElement:
    """``t * sigma_i`` (``t`` defaults to the identity)."""
    if t is None:
        t = identity(group or MonomialGroup(), lat.rank)
    return ExtendedElement(t, WeylWord((i,), True))


def tits_lift(lat: IsogenyLattice, w, group: MonomialGroup | None = None) -> ExtendedElement:
    """``N(w)``, multiplied out along the canonical reduced word."""
    group = group or MonomialGroup()
    out = neutral(lat, group)
    for i in reduce_word(lat.sys, w).letters:
        out = ext_mul(lat, out, simple_lift(lat, i, group=group))
    return out


def fw_mask(sys: RootSystem, w, i: int) -> np.ndarray:
    Mw = word_matrix(sys, w)
    Mi = np.linalg.matrix_power(Mw, i)
    return _fset_mask(sys, Mw, Mi)


def tits_power_discrepancy(lat: IsogenyLattice, w, n: int,
                           group: MonomialGroup | None = None) -> TorusElement:
    """``prod_{m=1}^{n-1} prod_{gamma in F_w(m)} gamma^vee(-1)``, the torus factor
    with ``N(w)^n = N(w^n) * discrepancy``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    group = group or MonomialGroup()
    total = np.zeros(lat.rank, dtype=np.int64)
    for m in range(1, n):
        total += _coroot_sum(lat, fw_mask(lat.sys, w, m))
    return minus_one_from_vector(group, total)


@dataclass(frozen=True)
class Section:
    """A section given by its values ``t_i * sigma_i`` on simple reflections."""

    lat: IsogenyLattice
    values: tuple[TorusElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.lat.rank:
            raise ValueError(f"expected {self.lat.rank} torus values, got {len(self.values)}")
        groups = {v.group for v in self.values}
        if len(groups) != 1:
            raise ValueError("section values live over different monomial groups")

    @property
    def group(self) -> MonomialGroup:
        return self.values[0].group

    def lift(self, i: int) -> ExtendedElement:
        return simple_lift(self.lat, i, self.values[i - 1])


def tits_section(lat: IsogenyLattice, group: MonomialGroup | None = None) -> Section:
    group = group or MonomialGroup()
    return Section(lat, tuple(identity(group, lat.rank) for _ in range(lat.rank)))


def braid_defects(S: Section) -> dict[tuple[int, int], TorusElement]:
    """For each pair ``i < k``, the torus ratio between the two alternating
    products of length ``m(i, k)``; all are identities exactly when ``S``
    respects the braid relations."""
    lat = S.lat
    out = {}
    for i in range(1, lat.rank + 1):
        for k in range(i + 1, lat.rank + 1):
            m = int(lat.sys.coxeter_m[i - 1, k - 1])
            lhs = neutral(lat, S.group)
            rhs = neutral(lat, S.group)
            for step in range(m):
                lhs = ext_mul(lat, lhs, S.lift(i if step % 2 == 0 else k))
                rhs = ext_mul(lat, rhs, S.lift(k if step % 2 == 0 else i))
            assert lhs.w == rhs.w
            out[(i, k)] = t_mul(lhs.t, t_inv(rhs.t))
    return out


def satisfies_braid(S: Section) -> bool:
    return all(d.is_identity() for d in braid_defects(S).values())


def section_eval(S: Section, w, check: bool = True) -> ExtendedElement:
    """``S(w)``: the product of the simple values along a reduced word of ``w``."""
    if check and not satisfies_braid(S):
        raise ValueError("the section does not satisfy the braid relations")
    out = neutral(S.lat, S.group)
    for i in reduce_word(S.lat.sys, w).letters:
        out = ext_mul(S.lat, out, S.lift(i))
    return out


def section_eval_word(S: Section, letters: Sequence[int]) -> ExtendedElement:
    """Product of the simple values along an arbitrary (not necessarily reduced) word."""
    out = neutral(S.lat, S.group)
    for i in letters:
        out = ext_mul(S.lat, out, S.lift(i))
    return out


def weyl_power(sys: RootSystem, w, n: int) -> WeylWord:
    return power(sys, w, n)
