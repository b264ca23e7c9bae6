"""Braid constraints on the torus parts of a section, and their exact solution.

Unknowns are the coordinates ``a[i,j]`` of ``t_i`` (``i`` = which simple
reflection, ``j`` = lattice coordinate). For each pair of simple reflections
the two alternating products of length ``m(i,k)`` must agree; their Weyl parts
and Tits-lift cocycles coincide, so only the torus exponents

    t_x1 * x1(t_x2) * x1 x2(t_x3) * ...

need to match. This is a homogeneous integer linear system on exponents;
its Smith form gives the solution group as free factors times finite cyclic
factors.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm

import numpy as np

from .extweyl import Section, braid_defects, tits_cocycle, tits_section
from .intmat import hermite_rows, smith_normal_form
from .lattice import IsogenyLattice
from .rootsys import WeylWord
from .torus import DEFAULT_MODULUS, MonomialGroup, TorusElement

BRUTE_FORCE_LIMIT = 5_000_000


def var_name(i: int, j: int) -> str:
    return f"a[{i},{j}]"


def alternating(i: int, k: int, m: int) -> tuple[int, ...]:
    return tuple(i if s % 2 == 0 else k for s in range(m))


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    lat: IsogenyLattice
    params: tuple[str, ...]
    matrix: np.ndarray            # rows x P integer coefficients
    constants: np.ndarray         # zeta exponent of each row, mod `modulus`
    row_labels: tuple[tuple[int, int, int], ...]  # (i, k, coordinate)
    modulus: int = DEFAULT_MODULUS

    @property
    def nrows(self) -> int:
        return self.matrix.shape[0]


def _unknown_blocks(n: int) -> list[np.ndarray]:
    """``T[i]`` is the ``n x n^2`` exponent matrix of the generic ``t_{i+1}``."""
    blocks = []
    for i in range(n):
        T = np.zeros((n, n * n), dtype=np.int64)
        for j in range(n):
            T[j, i * n + j] = 1
        blocks.append(T)
    return blocks


def _alternating_exponents(lat: IsogenyLattice, word: tuple[int, ...],
                           blocks: list[np.ndarray]) -> np.ndarray:
    total = np.zeros_like(blocks[0])
    C = np.eye(lat.rank, dtype=np.int64)
    for x in word:
        total += C @ blocks[x - 1]
        C = C @ lat.action_matrices[x - 1]
    return total


def generate_constraints(lat: IsogenyLattice, modulus: int = DEFAULT_MODULUS) -> ConstraintSystem:
    """Exponent rows ``LHS - RHS`` of every braid relation, one per coordinate."""
    n = lat.rank
    blocks = _unknown_blocks(n)
    group = MonomialGroup(modulus)
    tits = braid_defects(tits_section(lat, group))
    rows, consts, labels = [], [], []
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            m = int(lat.sys.coxeter_m[i - 1, k - 1])
            lhs = _alternating_exponents(lat, alternating(i, k, m), blocks)
            rhs = _alternating_exponents(lat, alternating(k, i, m), blocks)
            diff = lhs - rhs
            for j in range(n):
                rows.append(diff[j])
                consts.append(int(tits[(i, k)].zeta[j]))
                labels.append((i, k, j + 1))
    matrix = np.array(rows, dtype=np.int64).reshape(len(rows), n * n)
    params = tuple(var_name(i, j) for i in range(1, n + 1) for j in range(1, n + 1))
    return ConstraintSystem(lat, params, matrix, np.array(consts, dtype=np.int64),
                            tuple(labels), modulus)


@dataclass(frozen=True, eq=False)
class SectionFamily:
    """All sections of one lattice: ``t_i = values[i]`` over ``group``'s parameters.

    ``value_matrix[v, k]`` is the exponent of parameter ``k`` in unknown ``v``
    (unknowns ordered ``a[1,1], a[1,2], ..., a[n,n]``).
    """

    lat: IsogenyLattice
    group: MonomialGroup
    value_matrix: np.ndarray
    divisors: tuple[int, ...] = ()
    constraints: ConstraintSystem | None = field(default=None, repr=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SectionFamily) and self.lat == other.lat
                and self.group == other.group and self.divisors == other.divisors
                and np.array_equal(self.value_matrix, other.value_matrix))

    def __hash__(self) -> int:
        return hash((self.lat, self.group, self.value_matrix.tobytes()))

    @property
    def rank(self) -> int:
        return self.lat.rank

    @property
    def free_params(self) -> tuple[str, ...]:
        return tuple(p for p, d in zip(self.group.params, self.group.orders) if not d)

    @property
    def torsion_params(self) -> tuple[tuple[str, int], ...]:
        return tuple((p, d) for p, d in zip(self.group.params, self.group.orders) if d)

    @property
    def min_modulus(self) -> int:
        """Smallest even modulus holding every torsion order."""
        return lcm(2, *[d for _, d in self.torsion_params])

    @property
    def values(self) -> tuple[TorusElement, ...]:
        n = self.rank
        X = self.value_matrix
        return tuple(TorusElement(self.group, np.zeros(n, dtype=np.int64),
                                  X[i * n:(i + 1) * n, :]) for i in range(n))

    def section(self) -> Section:
        return Section(self.lat, self.values)

    def with_modulus(self, M: int) -> "SectionFamily":
        return SectionFamily(self.lat, self.group.with_modulus(M), self.value_matrix,
                             self.divisors, self.constraints)

    def param_columns(self) -> tuple[np.ndarray, np.ndarray, tuple[int, ...]]:
        """``(free block, torsion block, torsion orders)`` of the value matrix."""
        orders = np.array(self.group.orders, dtype=np.int64)
        free = self.value_matrix[:, orders == 0]
        tors = self.value_matrix[:, orders > 0]
        return free, tors, tuple(int(d) for d in orders[orders > 0])


def _tidy(free: np.ndarray, tors: list[tuple[np.ndarray, int]]):
    """Canonical reparametrization: column-Hermite form on the free block, then
    each torsion column reduced modulo the free columns and its order."""
    P = free.shape[0]
    if free.shape[1]:
        H = hermite_rows(free.T)
        free_cols = np.array(H, dtype=object).T
    else:
        free_cols = np.zeros((P, 0), dtype=object)
    out = []
    for col, d in tors:
        stack = np.concatenate([np.array(free_cols.T, dtype=object),
                                d * np.eye(P, dtype=object)], axis=0)
        H = hermite_rows(stack)
        v = [int(x) % d for x in col]
        for row in H:
            piv = next(c for c in range(P) if row[c])
            q = v[piv] // int(row[piv])
            if q:
                v = [x - q * int(y) for x, y in zip(v, row)]
        # prefer the smallest absolute representative in each slot
        v = [x - d if 2 * x > d else x for x in v]
        out.append((np.array(v, dtype=object), d))
    return free_cols, out


def _name_params(value_matrix: np.ndarray, kinds: list[str]) -> list[str]:
    P, k = value_matrix.shape
    names = []
    used = set()
    for c in range(k):
        name = None
        for v in range(P):
            row = value_matrix[v]
            if row[c] == 1 and not any(row[j] for j in range(k) if j != c):
                n = int(round(np.sqrt(P)))
                cand = var_name(v // n + 1, v % n + 1)
                if cand not in used:
                    name = cand
                    break
        if name is None:
            name = f"{kinds[c]}{c + 1}"
        used.add(name)
        names.append(name)
    return names


def solve_constraints(cs: ConstraintSystem) -> SectionFamily:
    """Free and torsion parametrization of the solution group of ``cs``."""
    if cs.constants.any():
        raise ArithmeticError("constraint rows carry nonzero constants; "
                              "the Tits section should satisfy every braid relation")
    P = cs.matrix.shape[1]
    H = hermite_rows(cs.matrix)
    if H.shape[0] == 0:
        H = np.zeros((0, P), dtype=object)
        diag, V = [], np.eye(P, dtype=object)
    else:
        _, D, V = smith_normal_form(H, left=False)
        diag = [int(D[i, i]) for i in range(min(D.shape))]
    free_idx = [k for k in range(P) if k >= len(diag) or diag[k] == 0]
    tors = [(V[:, k], diag[k]) for k in range(len(diag)) if diag[k] > 1]
    free, tors = _tidy(V[:, free_idx], tors)
    cols = [free[:, c] for c in range(free.shape[1])] + [c for c, _ in tors]
    orders = [0] * free.shape[1] + [d for _, d in tors]
    X = (np.array(cols, dtype=np.int64).T if cols
         else np.zeros((P, 0), dtype=np.int64))
    names = _name_params(X, ["u" if d == 0 else "z" for d in orders])
    M = lcm(cs.modulus, *[d for d in orders if d]) if orders else cs.modulus
    group = MonomialGroup(M, tuple(names), tuple(orders))
    return SectionFamily(cs.lat, group, X, tuple(d for d in diag if d), cs)


def solve_lattice(lat: IsogenyLattice, modulus: int = DEFAULT_MODULUS) -> SectionFamily:
    return solve_constraints(generate_constraints(lat, modulus))


def verify_family(fam: SectionFamily) -> bool:
    """Substitute the family back into the braid relations, symbolically.

    Uses full twisted-product multiplication, so it is independent of the
    exponent bookkeeping in :func:`generate_constraints`.
    """
    return all(d.is_identity() for d in braid_defects(fam.section()).values())


def family_points(fam: SectionFamily, M: int) -> set[tuple[int, ...]]:
    """All specializations of ``fam`` with parameter values in ``mu_M``.

    Free parameters range over ``Z/M``; a torsion parameter of order ``d`` over
    the multiples of ``M / gcd(d, M)``. Points are flattened exponent tuples
    ``(t_1 coords, ..., t_n coords)`` mod ``M``.
    """
    free, tors, orders = fam.param_columns()
    P = fam.value_matrix.shape[0]
    gens = [np.asarray(free[:, c], dtype=np.int64) % M for c in range(free.shape[1])]
    gens += [(M // gcd(d, M)) * np.asarray(tors[:, c], dtype=np.int64) % M
             for c, d in enumerate(orders)]
    return subgroup_closure(gens, P, M)


def subgroup_closure(gens: list[np.ndarray], dim: int, M: int) -> set[tuple[int, ...]]:
    """Subgroup of ``(Z/M)^dim`` generated by ``gens``."""
    pts = np.zeros((1, dim), dtype=np.int64)
    for g in gens:
        g = np.asarray(g, dtype=np.int64) % M
        if not g.any():
            continue
        k = M // gcd(M, *[int(x) for x in g]) if g.any() else 1
        shifts = (np.arange(k, dtype=np.int64)[:, None] * g[None, :]) % M
        pts = ((pts[:, None, :] + shifts[None, :, :]) % M).reshape(-1, dim)
        pts = np.unique(pts, axis=0)
    return {tuple(int(x) for x in row) for row in pts}


def brute_force_sections(lat: IsogenyLattice, M: int,
                         limit: int = BRUTE_FORCE_LIMIT) -> set[tuple[int, ...]]:
    """Every choice of ``t_i`` with coordinates in ``mu_M`` satisfying the braid
    relations, found by multiplying out both sides in the twisted product.

    Points are flattened exponent tuples as in :func:`family_points`.
    """
    n = lat.rank
    P = n * n
    if n > 3 or M > 12:
        raise ValueError(f"brute force is limited to rank <= 3 and M <= 12 "
                         f"(got rank {n}, M = {M}); use solve_constraints instead")
    if M <= 0 or M % 2:
        raise ValueError(f"modulus must be a positive even integer, got {M}")
    if M ** P > limit:
        raise ValueError(f"{M}^{P} assignments exceed the brute-force limit of {limit}; "
                         "use solve_constraints instead")
    group = MonomialGroup(M)
    grid = np.array(list(itertools.product(range(M), repeat=P)), dtype=np.int64)
    t = grid.reshape(-1, n, n)  # t[:, i, :] = exponents of t_{i+1}
    keep = np.ones(grid.shape[0], dtype=bool)
    for i in range(1, n + 1):
        for k in range(i + 1, n + 1):
            m = int(lat.sys.coxeter_m[i - 1, k - 1])
            lhs = _batched_product(lat, alternating(i, k, m), t, group)
            rhs = _batched_product(lat, alternating(k, i, m), t, group)
            keep &= np.all(lhs == rhs, axis=1)
    return {tuple(int(x) for x in row) for row in grid[keep]}


def _batched_product(lat: IsogenyLattice, word: tuple[int, ...], t: np.ndarray,
                     group: MonomialGroup) -> np.ndarray:
    """Torus part of ``(t_x1, s_x1)(t_x2, s_x2)...`` for a batch of assignments."""
    M = group.modulus
    acc = np.zeros((t.shape[0], lat.rank), dtype=np.int64)
    prefix: tuple[int, ...] = ()
    for x in word:
        C = lat.word_matrix(prefix)
        c = tits_cocycle(lat, WeylWord(prefix), WeylWord((x,)), group).zeta
        acc = (acc + t[:, x - 1, :] @ C.T + c[None, :]) % M
        prefix = prefix + (x,)
    return acc
