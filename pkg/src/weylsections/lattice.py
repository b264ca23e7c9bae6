"""Cocharacter lattices for each isogeny, with integer Weyl-action matrices.

A lattice is described by a basis ``lambda_1..lambda_n`` whose vectors are
given in rational simple-coroot coordinates (the columns of ``basis``). The
torus tuple ``(x_1, ..., x_n)`` means ``lambda_1(x_1) ... lambda_n(x_n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .rootsys import RootSystem, WeylWord, as_word, build_root_system

ISOGENY_HELP = "sc, adjoint, middle:a (type A), coweight:1 / coweight:n-1 / coweight:n (type D)"


@dataclass(frozen=True)
class Isogeny:
    """``kind`` is one of ``sc``, ``adjoint``, ``middle``, ``coweight``."""

    kind: str
    param: int | None = None

    @property
    def tag(self) -> str:
        return self.kind if self.param is None else f"{self.kind}:{self.param}"

    def __str__(self) -> str:
        return self.tag


def parse_isogeny(tag: str | Isogeny, rank: int | None = None) -> Isogeny:
    """Parse ``sc``, ``adjoint``, ``middle:a`` or ``coweight:{1,n-1,n}``."""
    if isinstance(tag, Isogeny):
        return tag
    text = str(tag).strip().lower()
    aliases = {"simply_connected": "sc", "simply-connected": "sc", "ad": "adjoint"}
    text = aliases.get(text, text)
    if text in ("sc", "adjoint"):
        return Isogeny(text)
    kind, sep, arg = text.partition(":")
    if not sep or kind not in ("middle", "coweight"):
        raise ValueError(f"unknown isogeny {tag!r}; expected {ISOGENY_HELP}")
    arg = arg.strip()
    if kind == "coweight" and arg.startswith("n"):
        if rank is None:
            raise ValueError(f"isogeny {tag!r} needs the rank to resolve {arg!r}")
        offset = arg[1:].replace(" ", "")
        try:
            value = rank + (int(offset) if offset else 0)
        except ValueError:
            raise ValueError(f"cannot read coweight index {arg!r}") from None
        return Isogeny(kind, value)
    try:
        return Isogeny(kind, int(arg))
    except ValueError:
        raise ValueError(f"cannot read isogeny parameter {arg!r}") from None


def _frac_inverse(A: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(A)
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def _frac_matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def _to_int(A) -> np.ndarray:
    out = np.zeros((len(A), len(A[0])), dtype=np.int64)
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            x = Fraction(x)
            if x.denominator != 1:
                raise ArithmeticError("non-integral lattice coordinate")
            out[i, j] = int(x)
    return out


@dataclass(frozen=True, eq=False)
class IsogenyLattice:
    sys: RootSystem
    isogeny: Isogeny
    basis: tuple[tuple[Fraction, ...], ...]  # rows = coordinates, columns = lambda_j
    basis_names: tuple[str, ...]

    @property
    def rank(self) -> int:
        return self.sys.rank

    @property
    def isogeny_tag(self) -> str:
        return self.isogeny.tag

    @property
    def name(self) -> str:
        return f"{self.sys.name} {self.isogeny.tag}"

    def __repr__(self) -> str:
        return f"IsogenyLattice({self.name})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, IsogenyLattice) and self.sys == other.sys
                and self.isogeny == other.isogeny)

    def __hash__(self) -> int:
        return hash((self.sys, self.isogeny))

    @cached_property
    def _basis_inverse(self) -> list[list[Fraction]]:
        return _frac_inverse([list(r) for r in self.basis])

    @cached_property
    def coroot_coords(self) -> np.ndarray:
        """Column ``i`` holds ``alpha_i^vee`` in the lambda basis."""
        return _to_int(self._basis_inverse)

    @cached_property
    def index(self) -> int:
        """Index of the coroot lattice in this lattice."""
        return abs(int(round(np.linalg.det(self.coroot_coords.astype(float)))))

    @cached_property
    def action_matrices(self) -> tuple[np.ndarray, ...]:
        """``C[i]`` with ``s_i(lambda_j) = sum_k C[i][k, j] lambda_k``."""
        B = [list(r) for r in self.basis]
        out = []
        for R in self.sys.coreflection_matrices:
            Rf = [[Fraction(int(x)) for x in row] for row in R]
            out.append(_to_int(_frac_matmul(self._basis_inverse, _frac_matmul(Rf, B))))
        return tuple(out)

    def word_matrix(self, w) -> np.ndarray:
        M = np.eye(self.rank, dtype=np.int64)
        for i in as_word(w).letters:
            M = M @ self.action_matrices[i - 1]
        return M

    @cached_property
    def positive_coroot_vectors(self) -> np.ndarray:
        """Coroots of the positive roots as columns in the lambda basis."""
        return self.coroot_coords @ self.sys.positive_coroot_matrix


def _adjoint_basis(sys: RootSystem) -> list[list[Fraction]]:
    # omega_j in coroot coordinates: <alpha_i, omega_j> = delta_ij, i.e. cartan^T @ x = e_j
    CT = [[Fraction(int(sys.cartan[j, i])) for j in range(sys.rank)] for i in range(sys.rank)]
    return _frac_inverse(CT)


def build_lattice(sys_or_type, isogeny="sc", rank: int | None = None) -> IsogenyLattice:
    """Cocharacter lattice for an isogeny of the given root system.

    ``sys_or_type`` may be a :class:`RootSystem` or a type letter (then ``rank``
    is required).
    """
    if isinstance(sys_or_type, RootSystem):
        sys = sys_or_type
    else:
        if rank is None:
            raise ValueError("rank is required when a type letter is given")
        sys = build_root_system(sys_or_type, rank)
    n = sys.rank
    iso = parse_isogeny(isogeny, n)
    omega = _adjoint_basis(sys)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col(M, j):
        return [M[i][j] for i in range(n)]

    if iso.kind == "sc":
        cols = [col(ident, j) for j in range(n)]
        names = [f"α{j + 1}∨" for j in range(n)]
    elif iso.kind == "adjoint":
        cols = [col(omega, j) for j in range(n)]
        names = [f"ω{j + 1}" for j in range(n)]
    elif iso.kind == "middle":
        if sys.type_tag != "A":
            raise ValueError("middle:a isogenies exist only for type A; "
                             "use coweight:k for type D")
        a = iso.param
        if a is None or (n + 1) % a or not 1 < a < n + 1:
            raise ValueError(f"middle:{a} for A{n} needs a | {n + 1} and 1 < a < {n + 1}")
        cols = [col(ident, j) for j in range(n - 1)] + [col(omega, a - 1)]
        names = [f"α{j + 1}∨" for j in range(n - 1)] + [f"ω{a}"]
    elif iso.kind == "coweight":
        if sys.type_tag != "D":
            raise ValueError("coweight:k isogenies exist only for type D; "
                             "use middle:a for type A")
        k = iso.param
        if k == 1:
            cols = [col(ident, j) for j in range(n - 1)] + [col(omega, 0)]
            names = [f"α{j + 1}∨" for j in range(n - 1)] + ["ω1"]
        elif k in (n - 1, n):
            if n % 2:
                raise ValueError(f"coweight:{k} for D{n} needs n even; for odd n, "
                                 "omega_{n-1} and omega_n already generate the adjoint lattice")
            cols = [col(omega, k - 1)] + [col(ident, j) for j in range(1, n)]
            names = [f"ω{k}"] + [f"α{j + 1}∨" for j in range(1, n)]
        else:
            raise ValueError(f"coweight:{k} for D{n} must be 1, n-1 or n")
    else:
        raise ValueError(f"unknown isogeny {iso.tag!r}")

    basis = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    lat = IsogenyLattice(sys, iso, basis, tuple(names))
    lat.coroot_coords  # integrality check
    return lat


def coroot_vector(lat: IsogenyLattice, root: Sequence, *, coords: bool = False) -> np.ndarray:
    """Coordinates of the coroot of ``root`` in the lattice basis.

    ``root`` is an ambient vector, or simple-root coordinates when ``coords``
    is set.
    """
    sys = lat.sys
    root = tuple(root)
    if coords:
        if len(root) != sys.rank:
            raise ValueError(f"expected {sys.rank} simple-root coordinates, got {len(root)}")
        c = tuple(int(x) for x in root)
    else:
        if len(root) != sys.ambient_dim:
            raise ValueError(f"root {root} has the wrong length for {sys.name}")
        c = sys.coords_of(root)
    sign = 1
    if any(x < 0 for x in c):
        sign, c = -1, tuple(-x for x in c)
    if c not in sys._coord_index:
        raise ValueError(f"{root} is not a root of {sys.name}")
    v = lat.coroot_coords @ np.array(sys.coroot_coords(c), dtype=np.int64)
    return sign * v


def simple_coroot_vector(lat: IsogenyLattice, i: int) -> np.ndarray:
    return lat.coroot_coords[:, i - 1].copy()


def all_isogenies(type_tag: str, rank: int) -> list[Isogeny]:
    """Every isogeny tag accepted for the type, in a stable order."""
    out = [Isogeny("sc")]
    if type_tag == "A":
        out += [Isogeny("middle", a) for a in range(2, rank + 1) if (rank + 1) % a == 0]
    if type_tag == "D":
        out.append(Isogeny("coweight", 1))
        if rank % 2 == 0:
            out += [Isogeny("coweight", rank - 1), Isogeny("coweight", rank)]
    if type_tag not in "EFG" or (type_tag == "E" and rank in (6, 7)):
        out.append(Isogeny("adjoint"))
    return out
