"""Orders of lifted simple reflections, order profiles, and T-conjugacy.

The square of ``t_i sigma_i`` is the torus element ``t_i s_i(t_i) alpha_i^vee(-1)``,
so a lift has order ``2 * ord(square)``. Order profiles are compared in the
"more homomorphic" direction: smaller orders are better and an infinite label
is worse than any finite one.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .extweyl import Section
from .intmat import elementary_divisors, hermite_rows, left_kernel, smith_normal_form
from .lattice import IsogenyLattice
from .solver import SectionFamily
from .torus import (DEFAULT_MODULUS, MonomialGroup, TorusElement, apply_matrix,
                    format_monomial, minus_one_from_vector, order, specialize, t_inv,
                    t_mul)

INF = math.inf
ENUMERATION_LIMIT = 2_000_000


def _label_str(x) -> str:
    return "∞" if x == INF else str(int(x))


@dataclass(frozen=True, order=True)
class OrderProfile:
    labels: tuple

    def __post_init__(self):
        labels = tuple(INF if x in (INF, None, "inf", "∞") else int(x) for x in self.labels)
        for x in labels:
            if x != INF and (x <= 0 or x % 2):
                raise ValueError(f"order labels are positive even integers or infinite, got {x}")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __str__(self) -> str:
        return "(" + ",".join(_label_str(x) for x in self.labels) + ")"

    def sort_key(self):
        return tuple((x == INF, 0 if x == INF else x) for x in self.labels)

    def is_finite(self) -> bool:
        return INF not in self.labels

    def to_json(self) -> list:
        return ["inf" if x == INF else int(x) for x in self.labels]


# ----------------------------------------------------------------- lift orders

def square_of_lift(lat: IsogenyLattice, t: TorusElement, i: int) -> TorusElement:
    """Torus element ``(t sigma_i)^2 = t * s_i(t) * alpha_i^vee(-1)``."""
    s_t = apply_matrix(lat.action_matrices[i - 1], t)
    return t_mul(t_mul(t, s_t), minus_one_from_vector(t.group, lat.coroot_coords[:, i - 1]))


def lift_order(lat: IsogenyLattice, t: TorusElement, i: int):
    """Order of ``t sigma_i``: twice the order of its square, ``inf`` when a free
    parameter survives in the square."""
    o = order(square_of_lift(lat, t, i))
    return INF if o == INF else 2 * o


def section_profile(S: Section) -> OrderProfile:
    return OrderProfile(tuple(lift_order(S.lat, S.values[i - 1], i)
                              for i in range(1, S.lat.rank + 1)))


# ----------------------------------------------------------------- linear maps

def _square_maps(fam: SectionFamily) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Per simple index: matrix ``Q_i`` with square exponents ``Q_i @ p`` and the
    lattice vector ``d_i`` with constant part ``d_i(-1)``."""
    lat, n = fam.lat, fam.rank
    X = fam.value_matrix
    Qs, ds = [], []
    for i in range(n):
        Xi = X[i * n:(i + 1) * n, :]
        Qs.append((np.eye(n, dtype=np.int64) + lat.action_matrices[i]) @ Xi)
        ds.append(lat.coroot_coords[:, i].copy())
    return Qs, ds


def _generators(fam: SectionFamily, M: int) -> list[np.ndarray]:
    """Generators of the parameter group ``mu_M``-points, as exponent vectors."""
    K = fam.group.nparams
    gens = []
    for k, d in enumerate(fam.group.orders):
        e = np.zeros(K, dtype=np.int64)
        e[k] = 1 if d == 0 else M // gcd(d, M)
        gens.append(e)
    return gens


def _image_closure(mats: np.ndarray, gens: list[np.ndarray], M: int,
                   limit: int = ENUMERATION_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """All values of ``mats @ p mod M`` as ``p`` ranges over the group generated
    by ``gens``, with one preimage ``p`` per value."""
    dim = mats.shape[0]
    K = len(gens[0]) if gens else 0
    pts = np.zeros((1, dim), dtype=np.int64)
    pre = np.zeros((1, K), dtype=np.int64)
    for g in gens:
        img = (mats @ g) % M
        if not img.any():
            continue
        k = M // gcd(M, *[int(x) for x in img])
        steps = np.arange(k, dtype=np.int64)[:, None]
        pts = ((pts[:, None, :] + (steps * img[None, :])[None, :, :]) % M).reshape(-1, dim)
        pre = (pre[:, None, :] + (steps * g[None, :])[None, :, :]).reshape(-1, K)
        pts, idx = np.unique(pts, axis=0, return_index=True)
        pre = pre[idx]
        if pts.shape[0] > limit:
            raise ValueError(f"image has more than {limit} points; lower the modulus")
    return pts, pre


def _rational_rank(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(elementary_divisors(np.asarray(A, dtype=object)))


def finite_sets(fam: SectionFamily) -> list[frozenset[int]]:
    """Index sets ``J`` that can be exactly the finite-order labels.

    With free parameters in general position inside ``ker Q_J`` (over Q), the
    square ``i`` is torsion exactly when its free part vanishes there, i.e. when
    its row space lies in the rational span of the rows of ``Q_J``.
    """
    Qs, _ = _square_maps(fam)
    free = [k for k, d in enumerate(fam.group.orders) if d == 0]
    F = [Q[:, free] for Q in Qs]
    n = fam.rank
    out = set()
    for r in range(n + 1):
        for J in itertools.combinations(range(n), r):
            base = np.concatenate([F[j] for j in J], axis=0) if J else np.zeros((0, len(free)), dtype=np.int64)
            rk = _rational_rank(base)
            closed = frozenset(i for i in range(n)
                               if _rational_rank(np.concatenate([base, F[i]], axis=0)) == rk)
            out.add(closed)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _profile_from_square(sq: np.ndarray, d: np.ndarray, M: int) -> int:
    z = (sq + (M // 2) * d) % M
    o = 1
    for x in z:
        o = lcm(o, M // gcd(int(x), M))
    return 2 * o


def _check_modulus(fam: SectionFamily, M: int) -> None:
    if M <= 0 or M % 2:
        raise ValueError(f"modulus must be a positive even integer, got {M}")
    if M % fam.min_modulus:
        raise ValueError(f"modulus {M} is not a multiple of the family's minimal modulus "
                         f"{fam.min_modulus}")


def finite_profile_points(fam: SectionFamily, M: int, extra: np.ndarray | None = None):
    """Pairs ``(profile, extra values)`` over all ``mu_M``-specializations.

    ``extra`` is an optional matrix of additional linear functionals on the
    parameters (used for conjugacy invariants); returns a set of pairs.
    """
    _check_modulus(fam, M)
    Qs, ds = _square_maps(fam)
    n = fam.rank
    blocks = list(Qs) + ([extra] if extra is not None and extra.size else [])
    stacked = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, fam.group.nparams))
    pts, _ = _image_closure(stacked.astype(np.int64), _generators(fam, M), M)
    out = set()
    for row in pts:
        labels = tuple(_profile_from_square(row[i * n:(i + 1) * n], ds[i], M) for i in range(n))
        out.add((OrderProfile(labels), tuple(int(x) for x in row[n * n:])))
    return out


def profile_witnesses(fam: SectionFamily, M: int) -> dict[OrderProfile, np.ndarray]:
    """One parameter assignment (exponents of ``zeta_M``) for each finite profile."""
    _check_modulus(fam, M)
    Qs, ds = _square_maps(fam)
    n = fam.rank
    stacked = np.concatenate(Qs, axis=0).astype(np.int64)
    pts, pre = _image_closure(stacked, _generators(fam, M), M)
    out: dict[OrderProfile, np.ndarray] = {}
    for row, p in zip(pts, pre):
        labels = tuple(_profile_from_square(row[i * n:(i + 1) * n], ds[i], M) for i in range(n))
        prof = OrderProfile(labels)
        if prof not in out or tuple(np.abs(p)) < tuple(np.abs(out[prof])):
            out[prof] = p % M
    return out


def specialize_family(fam: SectionFamily, assignment, M: int | None = None) -> Section:
    """The section obtained by substituting ``zeta_M`` powers for the parameters."""
    M = M or fam.group.modulus
    vals = tuple(specialize(v, assignment, M) for v in fam.values)
    return Section(fam.lat, vals)


def random_specialization(fam: SectionFamily, M: int, rng: np.random.Generator) -> Section:
    """A uniformly random ``mu_M``-point of the family."""
    _check_modulus(fam, M)
    vec = [int(rng.integers(M)) if not d else (M // d) * int(rng.integers(d))
           for d in fam.group.orders]
    return specialize_family(fam, vec, M)


def realize_profile(fam: SectionFamily, profile: OrderProfile, M: int | None = None) -> Section:
    """A specialized section of ``fam`` with the given finite profile."""
    M = M or lcm(DEFAULT_MODULUS, fam.min_modulus)
    wit = profile_witnesses(fam, M)
    profile = OrderProfile(tuple(profile))
    if profile not in wit:
        raise ValueError(f"profile {profile} does not occur with parameters in mu_{M}")
    return specialize_family(fam, wit[profile], M)


def optimal_section(fam: SectionFamily, M: int | None = None) -> Section:
    """A specialized section realizing the unique optimal profile."""
    M = M or lcm(DEFAULT_MODULUS, fam.min_modulus)
    return realize_profile(fam, optimal_profile(enumerate_profiles(fam, M)), M)


def enumerate_profiles(fam: SectionFamily, M: int | None = None) -> set[OrderProfile]:
    """Order profiles of all sections whose torsion and root-of-unity parameters
    lie in ``mu_M``, together with the profiles reached by free parameters of
    infinite order."""
    M = M or fam.group.modulus
    finite = {p for p, _ in finite_profile_points(fam, M)}
    out = set(finite)
    n = fam.rank
    for J in finite_sets(fam):
        if len(J) == n:
            continue
        for p in finite:
            out.add(OrderProfile(tuple(p.labels[i] if i in J else INF for i in range(n))))
    return out


def classes_per_profile(fam: SectionFamily, M: int | None = None) -> dict[OrderProfile, int]:
    """Number of T-conjugacy classes with each finite profile among ``mu_M``-points."""
    M = M or fam.group.modulus
    inv = conjugacy_invariants(fam)
    extra = inv.param_matrix if inv.param_matrix.size else None
    counts: dict[OrderProfile, set] = {}
    for prof, vals in finite_profile_points(fam, M, extra):
        counts.setdefault(prof, set()).add(vals)
    return {p: len(v) for p, v in counts.items()}


# ----------------------------------------------------------------- partial order

def profile_order(p: OrderProfile | Sequence, q: OrderProfile | Sequence,
                  strict: bool = False) -> str:
    """``greater`` when ``p`` is more homomorphic than ``q``: every label of ``p``
    is at most the matching label of ``q`` and at least one is smaller.

    With ``strict`` every label must be smaller. That reading leaves several
    maximal G2 profiles, so it is offered only for comparison.
    """
    p, q = OrderProfile(tuple(p)), OrderProfile(tuple(q))
    if len(p) != len(q):
        raise ValueError("profiles of different rank")
    if p == q:
        return "equal"
    if strict:
        if all(a < b for a, b in zip(p, q)):
            return "greater"
        if all(a > b for a, b in zip(p, q)):
            return "less"
        return "incomparable"
    le = all(a <= b for a, b in zip(p, q))
    ge = all(a >= b for a, b in zip(p, q))
    if le and ge:
        return "equal"
    if le:
        return "greater"
    if ge:
        return "less"
    return "incomparable"


def maximal_profiles(profiles: Iterable[OrderProfile], strict: bool = False) -> list[OrderProfile]:
    ps = sorted(set(profiles), key=OrderProfile.sort_key)
    return [p for p in ps if not any(profile_order(q, p, strict) == "greater" for q in ps)]


class NoUniqueOptimum(ValueError):
    pass


def optimal_profile(profiles: Iterable[OrderProfile]) -> OrderProfile:
    """The unique most homomorphic profile; raises :class:`NoUniqueOptimum` otherwise."""
    ps = list(profiles)
    if not ps:
        raise NoUniqueOptimum("no profiles given")
    tops = maximal_profiles(ps)
    if len(tops) != 1:
        raise NoUniqueOptimum("no unique maximal profile: " + ", ".join(map(str, tops)))
    return tops[0]


def hasse_edges(profiles: Iterable[OrderProfile]) -> list[tuple[OrderProfile, OrderProfile]]:
    """Covering pairs ``(lower, upper)``: the transitive reduction of the order."""
    ps = sorted(set(profiles), key=OrderProfile.sort_key)
    edges = []
    for lo in ps:
        for hi in ps:
            if profile_order(hi, lo) != "greater":
                continue
            if any(profile_order(mid, lo) == "greater" and profile_order(hi, mid) == "greater"
                   for mid in ps):
                continue
            edges.append((lo, hi))
    return edges


@dataclass(frozen=True)
class ProfileReport:
    """Everything the profile enumeration says about one lattice at one modulus.

    ``hasse`` holds index pairs ``(lower, upper)`` into ``profiles``.
    """

    type_tag: str
    rank: int
    isogeny: str
    modulus: int
    min_modulus: int
    profiles: tuple[OrderProfile, ...]
    hasse: tuple[tuple[int, int], ...]
    optimal: OrderProfile | None
    class_counts: tuple[tuple[OrderProfile, int], ...] | None = None


def profile_report(fam: SectionFamily, M: int | None = None, classes: bool = False) -> ProfileReport:
    M = M or lcm(fam.group.modulus, fam.min_modulus)
    _check_modulus(fam, M)
    ps = tuple(sorted(enumerate_profiles(fam, M), key=OrderProfile.sort_key))
    pos = {p: k for k, p in enumerate(ps)}
    edges = tuple((pos[lo], pos[hi]) for lo, hi in hasse_edges(ps))
    try:
        best = optimal_profile(ps)
    except NoUniqueOptimum:
        best = None
    counts = None
    if classes:
        cp = classes_per_profile(fam, M)
        counts = tuple((p, cp[p]) for p in ps if p in cp)
    lat = fam.lat
    return ProfileReport(lat.sys.type_tag, lat.rank, lat.isogeny_tag, M, fam.min_modulus,
                         ps, edges, best, counts)


# ----------------------------------------------------------------- conjugacy

def conjugate_section(S: Section, t: TorusElement) -> Section:
    """``t S t^{-1}``: each ``t_i`` becomes ``t_i * t * s_i(t^{-1})``."""
    if t.group != S.group:
        raise ValueError("conjugating element lives over a different monomial group")
    ti = t_inv(t)
    vals = tuple(t_mul(t_mul(v, t), apply_matrix(S.lat.action_matrices[i], ti))
                 for i, v in enumerate(S.values))
    return Section(S.lat, vals)


def coboundary_matrix(lat: IsogenyLattice) -> np.ndarray:
    """``P x n`` matrix sending ``log t`` to the change in the unknowns ``a[i,j]``."""
    n = lat.rank
    return np.concatenate([np.eye(n, dtype=np.int64) - lat.action_matrices[i]
                           for i in range(n)], axis=0)


@dataclass(frozen=True, eq=False)
class ConjugacyInvariant:
    """Monomials in the unknowns ``a[i,j]`` separating T-orbits of sections.

    ``monomials[r]`` is an exponent vector over the unknowns; ``orders[r]`` is
    its order on the family (0 for infinite). ``param_matrix[r]`` is the same
    monomial rewritten in the family's parameters.
    """

    family: SectionFamily
    monomials: np.ndarray
    orders: tuple[int, ...]
    param_matrix: np.ndarray
    kernel: np.ndarray  # every unknown-monomial constant on orbits, as rows

    def __len__(self) -> int:
        return len(self.orders)

    def unknown_names(self) -> tuple[str, ...]:
        n = self.family.rank
        return tuple(f"a[{i},{j}]" for i in range(1, n + 1) for j in range(1, n + 1))

    def describe(self) -> list[str]:
        g = MonomialGroup(2, self.unknown_names())
        out = []
        for mono, d in zip(self.monomials, self.orders):
            text = format_monomial(g, 0, mono)
            out.append(f"{text} (order {d if d else '∞'})")
        return out

    def describe_params(self) -> list[str]:
        return [format_monomial(self.family.group, 0, row) for row in self.param_matrix]


def conjugacy_invariants(fam: SectionFamily) -> ConjugacyInvariant:
    """Generators of the monomials constant on T-orbits, modulo those that are
    identically 1 on the family."""
    B = coboundary_matrix(fam.lat)
    Kb = left_kernel(B)                    # rows: monomials killed by every coboundary
    if fam.constraints is None:
        raise ValueError("family was built without its constraint system")
    R = hermite_rows(fam.constraints.matrix)
    P = B.shape[0]
    if Kb.shape[0] == 0:
        empty = np.zeros((0, P), dtype=np.int64)
        return ConjugacyInvariant(fam, empty, (), np.zeros((0, fam.group.nparams), dtype=np.int64), empty)
    # coordinates of R in the kernel basis
    coords = []
    for r in R:
        sol = _solve_rows(Kb, r)
        coords.append(sol)
    Xc = np.array(coords, dtype=object).reshape(len(coords), Kb.shape[0])
    k = Kb.shape[0]
    if Xc.shape[0]:
        _, D, _, Vinv = smith_normal_form(Xc, left=False, right=False, right_inverse=True)
        diag = [int(D[i, i]) for i in range(min(D.shape))]
    else:
        diag, Vinv = [], np.eye(k, dtype=object)
    newK = Vinv.dot(np.asarray(Kb, dtype=object))
    monos, orders = [], []
    for j in range(k):
        d = diag[j] if j < len(diag) else 0
        if d == 1:
            continue
        monos.append(newK[j])
        orders.append(d)
    monos = np.array(monos, dtype=np.int64).reshape(len(monos), P)
    pm = (monos @ fam.value_matrix) if len(monos) else np.zeros((0, fam.group.nparams), dtype=np.int64)
    pm = pm.copy()
    for c, d in enumerate(fam.group.orders):
        if d:
            pm[:, c] %= d
    return ConjugacyInvariant(fam, monos, tuple(orders), pm, np.asarray(Kb, dtype=np.int64))


def _solve_rows(basis, target) -> list[int]:
    """Integer ``x`` with ``x @ basis == target``."""
    from .intmat import solve_integer
    sol = solve_integer(np.asarray(basis, dtype=object).T, list(target))
    if sol is None:
        raise ArithmeticError("constraint row is not constant on orbits")
    return [int(v) for v in sol]


def invariant_lattice(fam: SectionFamily, inv: ConjugacyInvariant | None = None) -> np.ndarray:
    """Hermite basis of invariants plus constraint rows (the lattice compared up
    to re-basing)."""
    inv = inv or conjugacy_invariants(fam)
    R = hermite_rows(fam.constraints.matrix)
    parts = [np.asarray(R, dtype=object)]
    if len(inv):
        parts.append(np.asarray(inv.monomials, dtype=object))
    return hermite_rows(np.concatenate(parts, axis=0))


def _section_vector(S: Section) -> tuple[np.ndarray, int]:
    if any(not v.is_constant() for v in S.values):
        raise ValueError("sections must be specialized (no free symbols) to compare classes")
    M = S.group.modulus
    return np.concatenate([v.zeta for v in S.values]).astype(np.int64), M


def invariant_values(inv: ConjugacyInvariant, S: Section) -> tuple[int, ...]:
    vec, M = _section_vector(S)
    return tuple(int(x) % M for x in inv.kernel @ vec)


def same_class(fam: SectionFamily, S1: Section, S2: Section,
               inv: ConjugacyInvariant | None = None) -> bool:
    """True when the specialized sections ``S1``, ``S2`` of ``fam`` are T-conjugate."""
    if S1.group.modulus != S2.group.modulus:
        raise ValueError("sections specialized at different moduli")
    inv = inv or conjugacy_invariants(fam)
    return invariant_values(inv, S1) == invariant_values(inv, S2)


def find_conjugator(S1: Section, S2: Section) -> TorusElement | None:
    """Brute-force search for ``t`` with ``t S1 t^{-1} = S2``.

    Solutions, when they exist, can always be found among roots of unity of
    order ``M * L`` with ``L`` the exponent of the coboundary cokernel, so the
    search is exhaustive over ``mu_{ML}^rank``.
    """
    v1, M = _section_vector(S1)
    v2, M2 = _section_vector(S2)
    if M != M2:
        raise ValueError("sections specialized at different moduli")
    lat = S1.lat
    B = coboundary_matrix(lat)
    L = lcm(1, *elementary_divisors(B))
    N = M * L
    n = lat.rank
    if N ** n > ENUMERATION_LIMIT:
        raise ValueError(f"conjugator search over {N}^{n} points is too large")
    target = ((v2 - v1) * L) % N
    grid = np.array(list(itertools.product(range(N), repeat=n)), dtype=np.int64)
    img = (grid @ B.T) % N
    hit = np.flatnonzero(np.all(img == target[None, :], axis=1))
    if not len(hit):
        return None
    return TorusElement(MonomialGroup(N), grid[hit[0]])
