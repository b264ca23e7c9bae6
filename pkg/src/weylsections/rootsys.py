"""Root systems of the almost-simple types and Weyl-group word machinery.

Simple roots follow Bourbaki's plates. Roots are stored twice: as exact
ambient vectors (``Fraction`` entries) and as integer coordinates over the
simple roots. Weyl elements are integer matrices acting on simple-root
coordinates; a word ``[i1, i2, ..., ik]`` stands for ``s_i1 s_i2 ... s_ik``,
so the leftmost letter acts last.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Vector = tuple[Fraction, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _vec(entries: Iterable) -> Vector:
    return tuple(Fraction(x) for x in entries)


def _unit(dim: int, *pairs: tuple[int, object]) -> Vector:
    out = [Fraction(0)] * dim
    for pos, val in pairs:
        out[pos] += Fraction(val)
    return tuple(out)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _simple_roots(type_tag: str, n: int) -> list[Vector]:
    h = Fraction(1, 2)
    if type_tag == "A":
        return [_unit(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if type_tag in "BCD":
        roots = [_unit(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        if type_tag == "B":
            roots.append(_unit(n, (n - 1, 1)))
        elif type_tag == "C":
            roots.append(_unit(n, (n - 1, 2)))
        else:
            roots.append(_unit(n, (n - 2, 1), (n - 1, 1)))
        return roots
    if type_tag == "G":
        return [_vec([1, -1, 0]), _vec([-2, 1, 1])]
    if type_tag == "F":
        return [_vec([0, 1, -1, 0]), _vec([0, 0, 1, -1]), _vec([0, 0, 0, 1]),
                _vec([h, -h, -h, -h])]
    if type_tag == "E":
        e8 = [_vec([h, -h, -h, -h, -h, -h, -h, h]),
              _unit(8, (0, 1), (1, 1))]
        e8 += [_unit(8, (k - 1, 1), (k - 2, -1)) for k in range(2, 8)]
        return e8[:n]
    raise ValueError(f"unknown type {type_tag!r}")


def check_type(type_tag: str, rank: int) -> None:
    """Raise ``ValueError`` unless ``(type_tag, rank)`` names an almost-simple type."""
    if type_tag not in "ABCDEFG" or len(type_tag) != 1:
        raise ValueError(f"unknown type {type_tag!r}; expected one of A..G")
    if not isinstance(rank, (int, np.integer)) or rank < 1:
        raise ValueError(f"rank must be a positive integer, got {rank!r}")
    if type_tag in _EXCEPTIONAL:
        allowed = _EXCEPTIONAL[type_tag]
        if rank not in allowed:
            raise ValueError(f"type {type_tag} exists only in rank "
                             + " or ".join(map(str, allowed)) + f", got {rank}")
    elif rank < _MIN_RANK[type_tag]:
        raise ValueError(f"type {type_tag} needs rank >= {_MIN_RANK[type_tag]}, got {rank}")


@dataclass(frozen=True)
class WeylWord:
    """A word in the simple reflections, letters numbered from 1."""

    letters: tuple[int, ...] = ()
    is_reduced: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "WeylWord") -> "WeylWord":
        return WeylWord(self.letters + tuple(other.letters))

    def inverse(self) -> "WeylWord":
        return WeylWord(self.letters[::-1], self.is_reduced)

    def __str__(self) -> str:
        return "·".join(f"s{i}" for i in self.letters) if self.letters else "1"


def as_word(w) -> WeylWord:
    if isinstance(w, WeylWord):
        return w
    return WeylWord(tuple(w))


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_tag: str
    rank: int
    simple_roots: tuple[Vector, ...]
    cartan: np.ndarray
    coxeter_m: np.ndarray
    positive_coords: tuple[tuple[int, ...], ...]

    @property
    def name(self) -> str:
        return f"{self.type_tag}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, RootSystem) and self.type_tag == other.type_tag
                and self.rank == other.rank)

    def __hash__(self) -> int:
        return hash((self.type_tag, self.rank))

    @cached_property
    def ambient_dim(self) -> int:
        return len(self.simple_roots[0])

    def ambient(self, coords: Sequence[int]) -> Vector:
        """Ambient vector of the root with the given simple-root coordinates."""
        out = [Fraction(0)] * self.ambient_dim
        for k, a in zip(coords, self.simple_roots):
            if k:
                for j in range(self.ambient_dim):
                    out[j] += k * a[j]
        return tuple(out)

    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(self.ambient(c) for c in self.positive_coords)

    @cached_property
    def all_roots(self) -> frozenset[Vector]:
        neg = (tuple(-x for x in r) for r in self.positive_roots)
        return frozenset(self.positive_roots) | frozenset(neg)

    @cached_property
    def positive_matrix(self) -> np.ndarray:
        """Positive roots as columns of simple-root coordinates."""
        return np.array(self.positive_coords, dtype=np.int64).T

    @cached_property
    def _coord_index(self) -> dict[tuple[int, ...], int]:
        return {c: k for k, c in enumerate(self.positive_coords)}

    def root_index(self, coords: Sequence[int]) -> int:
        """Index of a positive root given by its simple-root coordinates."""
        return self._coord_index[tuple(int(x) for x in coords)]

    def coords_of(self, v: Sequence) -> tuple[int, ...]:
        """Simple-root coordinates of an ambient vector in the root lattice."""
        basis = self._ambient_solver
        sol = basis @ np.array([float(x) for x in v])
        coords = tuple(int(round(x)) for x in sol)
        if self.ambient(coords) != _vec(v):
            raise ValueError(f"{v} is not in the root lattice of {self.name}")
        return coords

    @cached_property
    def _ambient_solver(self) -> np.ndarray:
        A = np.array([[float(x) for x in a] for a in self.simple_roots]).T
        return np.linalg.pinv(A)

    @cached_property
    def reflection_matrices(self) -> tuple[np.ndarray, ...]:
        """``s_i`` on simple-root coordinates: ``v - <v, alpha_i^vee> e_i``."""
        out = []
        for i in range(self.rank):
            R = np.eye(self.rank, dtype=np.int64)
            R[i, :] -= self.cartan[i, :]
            out.append(R)
        return tuple(out)

    @cached_property
    def coreflection_matrices(self) -> tuple[np.ndarray, ...]:
        """``s_i`` on simple-coroot coordinates."""
        out = []
        for i in range(self.rank):
            R = np.eye(self.rank, dtype=np.int64)
            R[i, :] -= self.cartan[:, i]
            out.append(R)
        return tuple(out)

    def coroot_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Coroot of a root, in simple-coroot coordinates."""
        beta = self.ambient(coords)
        bb = _dot(beta, beta)
        out = []
        for k, a in zip(coords, self.simple_roots):
            c = Fraction(int(k)) * _dot(a, a) / bb
            if c.denominator != 1:
                raise ArithmeticError("non-integral coroot coordinate")
            out.append(int(c))
        return tuple(out)

    @cached_property
    def positive_coroot_matrix(self) -> np.ndarray:
        """Coroots of the positive roots as columns in simple-coroot coordinates."""
        return np.array([self.coroot_coords(c) for c in self.positive_coords],
                        dtype=np.int64).T

    @property
    def num_positive(self) -> int:
        return len(self.positive_coords)


def build_root_system(type_tag: str, rank: int) -> RootSystem:
    """Root system of type ``type_tag`` and the given rank (Bourbaki numbering)."""
    type_tag = str(type_tag).upper()
    check_type(type_tag, rank)
    rank = int(rank)
    simple = _simple_roots(type_tag, rank)
    norms = [_dot(a, a) for a in simple]
    cartan = np.zeros((rank, rank), dtype=np.int64)
    for i in range(rank):
        for j in range(rank):
            c = 2 * _dot(simple[i], simple[j]) / norms[i]
            assert c.denominator == 1
            cartan[i, j] = int(c)
    prod_to_m = {0: 2, 1: 3, 2: 4, 3: 6}
    m = np.ones((rank, rank), dtype=np.int64)
    for i in range(rank):
        for j in range(rank):
            if i != j:
                m[i, j] = prod_to_m[int(cartan[i, j] * cartan[j, i])]

    # closure of the simple roots under simple reflections, in simple-root coordinates
    seen: set[tuple[int, ...]] = set()
    frontier = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    while frontier:
        nxt = []
        for c in frontier:
            if c in seen:
                continue
            seen.add(c)
            for i in range(rank):
                pairing = sum(int(cartan[i, j]) * c[j] for j in range(rank))
                img = list(c)
                img[i] -= pairing
                img = tuple(img)
                if all(x >= 0 for x in img) and any(img) and img not in seen:
                    nxt.append(img)
        frontier = nxt
    positive = tuple(sorted(seen, key=lambda c: (sum(c), tuple(-x for x in c))))
    return RootSystem(type_tag, rank, tuple(simple), cartan, m, positive)


# ----------------------------------------------------------------- elements

def word_matrix(sys: RootSystem, w) -> np.ndarray:
    """Matrix of ``w`` on simple-root coordinates."""
    M = np.eye(sys.rank, dtype=np.int64)
    for i in as_word(w).letters:
        M = M @ sys.reflection_matrices[i - 1]
    return M


def coword_matrix(sys: RootSystem, w) -> np.ndarray:
    """Matrix of ``w`` on simple-coroot coordinates."""
    M = np.eye(sys.rank, dtype=np.int64)
    for i in as_word(w).letters:
        M = M @ sys.coreflection_matrices[i - 1]
    return M


def _check_letters(sys: RootSystem, w: WeylWord) -> None:
    for i in w.letters:
        if not 1 <= i <= sys.rank:
            raise ValueError(f"letter {i} out of range 1..{sys.rank} for {sys.name}")


def reflect(sys: RootSystem, i: int, v: Sequence) -> Vector:
    """Reflect an ambient vector through the ``i``-th simple root."""
    if not 1 <= i <= sys.rank:
        raise ValueError(f"simple index {i} out of range 1..{sys.rank}")
    a = sys.simple_roots[i - 1]
    v = _vec(v)
    k = 2 * _dot(v, a) / _dot(a, a)
    return tuple(x - k * y for x, y in zip(v, a))


def word_action(sys: RootSystem, w, v: Sequence) -> Vector:
    """Apply ``w`` to an ambient vector; the rightmost letter acts first."""
    w = as_word(w)
    _check_letters(sys, w)
    out = _vec(v)
    for i in reversed(w.letters):
        out = reflect(sys, i, out)
    return out


def is_negative(col: Sequence[int]) -> bool:
    return any(x < 0 for x in col)


def word_from_matrix(sys: RootSystem, M: np.ndarray) -> WeylWord:
    """Canonical reduced word of the element with matrix ``M``.

    Peels off right descents, always taking the smallest available index.
    """
    M = np.array(M, dtype=np.int64)
    tail: list[int] = []
    while True:
        for i in range(sys.rank):
            if is_negative(M[:, i]):
                break
        else:
            break
        M = M @ sys.reflection_matrices[i]
        tail.append(i + 1)
        if len(tail) > sys.num_positive:
            raise ArithmeticError("matrix is not a Weyl group element")
    if not np.array_equal(M, np.eye(sys.rank, dtype=np.int64)):
        raise ArithmeticError("matrix is not a Weyl group element")
    return WeylWord(tuple(reversed(tail)), True)


def reduce_word(sys: RootSystem, w) -> WeylWord:
    """Reduced word for the same element as ``w``."""
    w = as_word(w)
    _check_letters(sys, w)
    return word_from_matrix(sys, word_matrix(sys, w))


def length(sys: RootSystem, w) -> int:
    """Length of the element ``w`` (number of inversions)."""
    images = word_matrix(sys, w) @ sys.positive_matrix
    return int(np.sum(np.any(images < 0, axis=0)))


def inversion_set(sys: RootSystem, w) -> frozenset[tuple[int, ...]]:
    """Positive roots (simple-root coordinates) sent to negative roots by ``w``."""
    images = word_matrix(sys, w) @ sys.positive_matrix
    neg = np.any(images < 0, axis=0)
    return frozenset(sys.positive_coords[k] for k in np.flatnonzero(neg))


def element_key(sys: RootSystem, w) -> bytes:
    """Hashable identity of the element represented by ``w``."""
    return word_matrix(sys, w).tobytes()


def same_element(sys: RootSystem, u, v) -> bool:
    return np.array_equal(word_matrix(sys, u), word_matrix(sys, v))


def multiply(sys: RootSystem, u, v) -> WeylWord:
    return reduce_word(sys, as_word(u) * as_word(v))


def inverse(sys: RootSystem, w) -> WeylWord:
    return reduce_word(sys, as_word(w).inverse())


def power(sys: RootSystem, w, n: int) -> WeylWord:
    """Reduced word for ``w**n`` (``n`` may be negative)."""
    M = word_matrix(sys, w)
    if n < 0:
        M = word_matrix(sys, as_word(w).inverse())
        n = -n
    P = np.eye(sys.rank, dtype=np.int64)
    for _ in range(n):
        P = P @ M
    return word_from_matrix(sys, P)


def element_order(sys: RootSystem, w) -> int:
    M = word_matrix(sys, w)
    I = np.eye(sys.rank, dtype=np.int64)
    P, k = M.copy(), 1
    while not np.array_equal(P, I):
        P = P @ M
        k += 1
    return k


def longest_element(sys: RootSystem, subset: Iterable[int] | None = None) -> WeylWord:
    """Longest element of the parabolic subgroup on ``subset`` (default: all nodes)."""
    nodes = sorted(range(1, sys.rank + 1) if subset is None else set(subset))
    M = np.eye(sys.rank, dtype=np.int64)
    grew = True
    while grew:
        grew = False
        for i in nodes:
            if not is_negative(M[:, i - 1]):
                M = M @ sys.reflection_matrices[i - 1]
                grew = True
                break
    return word_from_matrix(sys, M)


def elements(sys: RootSystem, limit: int = 200_000) -> list[WeylWord]:
    """All elements of W as canonical reduced words (small groups only)."""
    start = np.eye(sys.rank, dtype=np.int64)
    seen = {start.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for M in frontier:
            for R in sys.reflection_matrices:
                P = M @ R
                key = P.tobytes()
                if key not in seen:
                    seen[key] = P
                    nxt.append(P)
                    if len(seen) > limit:
                        raise ValueError(f"W({sys.name}) has more than {limit} elements")
        frontier = nxt
    return [word_from_matrix(sys, M) for M in seen.values()]


def reduced_words(sys: RootSystem, w) -> list[WeylWord]:
    """Every reduced word of ``w``."""
    M = word_matrix(sys, w)

    def rec(M: np.ndarray) -> list[tuple[int, ...]]:
        descents = [i for i in range(sys.rank) if is_negative(M[:, i])]
        if not descents:
            return [()]
        out = []
        for i in descents:
            for tail in rec(M @ sys.reflection_matrices[i]):
                out.append(tail + (i + 1,))
        return out

    return [WeylWord(ws, True) for ws in rec(M)]


def random_word(sys: RootSystem, max_len: int, rng: np.random.Generator) -> WeylWord:
    k = int(rng.integers(0, max_len + 1))
    return WeylWord(tuple(int(x) for x in rng.integers(1, sys.rank + 1, size=k)))
