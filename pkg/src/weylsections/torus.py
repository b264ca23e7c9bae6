"""Symbolic torus elements.

Each coordinate is a monomial ``zeta^e0 * prod_k p_k^e_k`` where ``zeta`` is a
formal primitive ``M``-th root of unity and the ``p_k`` are named parameters.
Parameters may carry a finite order (``p^d = 1``); their exponents are then
kept reduced mod ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Mapping, Sequence

import numpy as np

from .lattice import IsogenyLattice, coroot_vector, simple_coroot_vector

DEFAULT_MODULUS = 24


@dataclass(frozen=True)
class MonomialGroup:
    modulus: int = DEFAULT_MODULUS
    params: tuple[str, ...] = ()
    orders: tuple[int, ...] = field(default=())  # 0 = free, d > 0 = torsion of order d

    def __post_init__(self):
        if self.modulus <= 0 or self.modulus % 2:
            raise ValueError(f"modulus must be a positive even integer, got {self.modulus}")
        object.__setattr__(self, "params", tuple(self.params))
        orders = tuple(int(d) for d in self.orders) or (0,) * len(self.params)
        if len(orders) != len(self.params):
            raise ValueError("orders and params differ in length")
        object.__setattr__(self, "orders", orders)

    @property
    def nparams(self) -> int:
        return len(self.params)

    @property
    def half(self) -> int:
        return self.modulus // 2

    def index(self, name: str) -> int:
        return self.params.index(name)

    def with_modulus(self, M: int) -> "MonomialGroup":
        return MonomialGroup(M, self.params, self.orders)


class TorusElement:
    """Immutable vector of monomials over a :class:`MonomialGroup`."""

    __slots__ = ("group", "zeta", "exps")

    def __init__(self, group: MonomialGroup, zeta, exps=None):
        zeta = np.asarray(zeta, dtype=np.int64).reshape(-1) % group.modulus
        n = zeta.shape[0]
        if exps is None:
            exps = np.zeros((n, group.nparams), dtype=np.int64)
        exps = np.array(exps, dtype=np.int64).reshape(n, group.nparams)
        for k, d in enumerate(group.orders):
            if d:
                exps[:, k] %= d
        zeta.setflags(write=False)
        exps.setflags(write=False)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "exps", exps)

    def __setattr__(self, *_):
        raise AttributeError("TorusElement is immutable")

    @property
    def rank(self) -> int:
        return self.zeta.shape[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, TorusElement) and self.group == other.group
                and np.array_equal(self.zeta, other.zeta)
                and np.array_equal(self.exps, other.exps))

    def __hash__(self) -> int:
        return hash((self.group, self.zeta.tobytes(), self.exps.tobytes()))

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return t_mul(self, other)

    def is_identity(self) -> bool:
        return not self.zeta.any() and not self.exps.any()

    def is_constant(self) -> bool:
        """True when no parameter appears."""
        return not self.exps.any()

    def coordinate_str(self, j: int) -> str:
        return format_monomial(self.group, int(self.zeta[j]), self.exps[j])

    def __str__(self) -> str:
        return "(" + ", ".join(self.coordinate_str(j) for j in range(self.rank)) + ")"

    def __repr__(self) -> str:
        return f"TorusElement{self}"


def format_monomial(group: MonomialGroup, e0: int, exps: Sequence[int]) -> str:
    M = group.modulus
    e0 %= M
    factors = []
    for name, e in zip(group.params, exps):
        e = int(e)
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    body = "*".join(factors)
    if e0 == 0:
        return body or "1"
    if e0 == M // 2:
        return "-" + (body or "1")
    g = gcd(e0, M)
    root = f"ζ{M // g}" if g > 1 else f"ζ{M}"
    z = root if e0 // g == 1 else f"{root}^{e0 // g}"
    return z + ("*" + body if body else "")


def identity(group: MonomialGroup, rank: int) -> TorusElement:
    return TorusElement(group, np.zeros(rank, dtype=np.int64))


def constant(group: MonomialGroup, zeta: Sequence[int]) -> TorusElement:
    return TorusElement(group, zeta)


def _check_same(a: TorusElement, b: TorusElement) -> None:
    if a.group != b.group:
        raise ValueError("torus elements live over different monomial groups")
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")


def t_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    _check_same(a, b)
    return TorusElement(a.group, a.zeta + b.zeta, a.exps + b.exps)


def t_inv(a: TorusElement) -> TorusElement:
    return TorusElement(a.group, -a.zeta, -a.exps)


def t_pow(a: TorusElement, k: int) -> TorusElement:
    return TorusElement(a.group, k * a.zeta, k * a.exps)


def apply_matrix(C: np.ndarray, t: TorusElement) -> TorusElement:
    """New exponents ``C @ old`` for both the root-of-unity and parameter parts."""
    return TorusElement(t.group, C @ t.zeta, C @ t.exps)


def weyl_act(lat: IsogenyLattice, w, t: TorusElement) -> TorusElement:
    """``w(t)``; the rightmost letter of ``w`` acts first."""
    if t.rank != lat.rank:
        raise ValueError(f"rank mismatch: torus {t.rank}, lattice {lat.rank}")
    return apply_matrix(lat.word_matrix(w), t)


def coroot_eval_minus1(lat: IsogenyLattice, root, group: MonomialGroup | None = None,
                       *, coords: bool = False) -> TorusElement:
    """``beta^vee(-1)``; ``root`` is an ambient vector, simple-root coordinates
    (with ``coords``), or a simple index ``i`` given as an ``int``."""
    group = group or MonomialGroup()
    if isinstance(root, (int, np.integer)):
        d = simple_coroot_vector(lat, int(root))
    else:
        d = coroot_vector(lat, root, coords=coords)
    return TorusElement(group, group.half * d)


def minus_one_from_vector(group: MonomialGroup, d: Sequence[int]) -> TorusElement:
    """``lambda(-1)`` for the cocharacter with lattice coordinates ``d``."""
    return TorusElement(group, group.half * np.asarray(d, dtype=np.int64))


def specialize(t: TorusElement, assignment: Mapping[str, int] | Sequence[int],
               modulus: int | None = None) -> TorusElement:
    """Substitute ``p_k = zeta^{assignment[p_k]}``; returns an element with no parameters.

    ``assignment`` is a mapping from parameter names or a sequence aligned with
    ``t.group.params``. Torsion parameters must receive exponents compatible
    with their order.
    """
    g = t.group
    M = modulus or g.modulus
    if M % g.modulus:
        raise ValueError(f"target modulus {M} is not a multiple of {g.modulus}")
    if isinstance(assignment, Mapping):
        missing = [p for k, p in enumerate(g.params) if p not in assignment and t.exps[:, k].any()]
        if missing:
            raise KeyError(f"no value for parameter(s) {', '.join(missing)}")
        vec = np.array([int(assignment.get(p, 0)) for p in g.params], dtype=np.int64)
    else:
        vec = np.asarray(assignment, dtype=np.int64).reshape(-1)
        if vec.shape[0] != g.nparams:
            raise ValueError(f"expected {g.nparams} exponents, got {vec.shape[0]}")
    for k, d in enumerate(g.orders):
        if d and (vec[k] * d) % M:
            raise ValueError(f"parameter {g.params[k]} has order {d}; "
                             f"exponent {vec[k]} mod {M} is not a {d}-th root of unity")
    scale = M // g.modulus
    zeta = scale * t.zeta + t.exps @ vec
    return TorusElement(MonomialGroup(M), zeta)


def order(t: TorusElement) -> int | float:
    """Multiplicative order; ``inf`` when a free parameter appears.

    Torsion parameters have no single order as formal symbols, so they must be
    specialized first.
    """
    g = t.group
    free = [k for k, d in enumerate(g.orders) if not d]
    if t.exps[:, free].any():
        return float("inf")
    if t.exps.any():
        names = [g.params[k] for k in range(g.nparams) if t.exps[:, k].any()]
        raise ValueError("specialize torsion parameter(s) " + ", ".join(names)
                         + " before asking for an order")
    out = 1
    for z in t.zeta:
        out = lcm(out, g.modulus // gcd(int(z), g.modulus))
    return out
