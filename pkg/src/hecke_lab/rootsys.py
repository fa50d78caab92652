"""Simply-laced (ADE) root systems in simple-root coordinates.

Every vector of the root lattice is an integer tuple ``(c_1, ..., c_r)``
meaning ``sum c_i alpha_i``.  The invariant form is evaluated through the
Cartan matrix, normalized so that every root has square length 2; roots and
coroots coincide.

Node numbering:

* ``A_r``: the path ``1 - 2 - ... - r``.
* ``D_r`` (r >= 4): the path ``1 - ... - (r-2)`` with ``r-1`` and ``r`` both
  attached to ``r-2``.  For ``D_4`` the branch node is 2.
* ``E_r`` (r = 6, 7, 8): Bourbaki, the path ``1 - 3 - 4 - 5 - ... - r`` with
  node 2 attached to node 4.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

__all__ = [
    "RootSystemError",
    "RootSystem",
    "WeylElem",
    "build_root_system",
    "parse_type",
    "cartan_matrix",
]

Vector = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...]


class RootSystemError(ValueError):
    """Invalid Cartan type or malformed root-lattice input."""


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    if family == "A":
        if rank < 1:
            raise RootSystemError(f"A_{rank}: rank must be >= 1")
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        if rank < 4:
            raise RootSystemError(f"D_{rank}: rank must be >= 4")
        path = [(i, i + 1) for i in range(1, rank - 1)]
        return path + [(rank - 2, rank)]
    if family == "E":
        if rank not in (6, 7, 8):
            raise RootSystemError(f"E_{rank}: rank must be 6, 7 or 8")
        edges = [(1, 3), (2, 4), (3, 4)]
        edges += [(i, i + 1) for i in range(4, rank)]
        return edges
    raise RootSystemError(f"unknown family {family!r}; expected A, D or E")


def cartan_matrix(family: str, rank: int) -> Matrix:
    """Symmetric Cartan matrix of a simply-laced type."""
    rows = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in _edges(family, rank):
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = -1
    return tuple(tuple(r) for r in rows)


_TYPE_RE = re.compile(r"^\s*([ADEade])\s*_?\s*(\d+)\s*$")


def parse_type(text: str) -> tuple[str, int]:
    """``"A2"``, ``"d4"``, ``"E_8"`` -> ``(family, rank)``."""
    m = _TYPE_RE.match(text)
    if not m:
        raise RootSystemError(f"cannot parse Cartan type {text!r}")
    family, rank = m.group(1).upper(), int(m.group(2))
    _edges(family, rank)
    return family, rank


def _matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _is_positive(v: Vector) -> bool:
    # roots are either all >= 0 or all <= 0 in simple-root coordinates
    for c in v:
        if c:
            return c > 0
    return False


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: Matrix = field(repr=False)
    positive_roots: tuple = field(repr=False)
    lowest_root: Vector = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def simple_roots(self) -> tuple:
        r = self.rank
        return tuple(tuple(1 if j == i else 0 for j in range(r)) for i in range(r))

    @cached_property
    def roots(self) -> tuple:
        neg = tuple(tuple(-c for c in v) for v in self.positive_roots)
        return tuple(sorted(self.positive_roots + neg))

    @cached_property
    def negative_roots(self) -> tuple:
        return tuple(sorted(tuple(-c for c in v) for v in self.positive_roots))

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def highest_root(self) -> Vector:
        return tuple(-c for c in self.lowest_root)

    @cached_property
    def two_rho(self) -> Vector:
        """Sum of the positive roots (an element of the root lattice)."""
        return tuple(sum(c) for c in zip(*self.positive_roots))

    @cached_property
    def rho(self) -> tuple:
        """Half the sum of the positive roots, as Fractions."""
        return tuple(Fraction(c, 2) for c in self.two_rho)

    @cached_property
    def cartan_inverse(self) -> tuple:
        return _rational_inverse(self.cartan)

    def check_vector(self, v) -> Vector:
        v = tuple(v)
        if len(v) != self.rank:
            raise RootSystemError(
                f"vector of length {len(v)} in a rank-{self.rank} system"
            )
        return v

    def pairing(self, x, y):
        """Invariant form ``<x, y>``; roots have ``<a, a> = 2``."""
        x = self.check_vector(x)
        y = self.check_vector(y)
        return sum(xi * ci for xi, ci in zip(x, _matvec(self.cartan, y)))

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_set

    def is_positive(self, v) -> bool:
        return _is_positive(tuple(v))

    def reflect(self, alpha, v) -> Vector:
        """``v - <alpha, v> alpha`` for a root ``alpha``."""
        alpha = self.check_vector(alpha)
        if alpha not in self.root_set:
            raise RootSystemError(f"{alpha} is not a root of {self.name}")
        v = self.check_vector(v)
        k = self.pairing(alpha, v)
        return tuple(vi - k * ai for vi, ai in zip(v, alpha))

    def precedes(self, a, b) -> bool:
        """``a <= b`` in the dominance order: ``b - a`` is a non-negative
        combination of simple roots."""
        return all(y - x >= 0 for x, y in zip(a, b))

    def simple_reflection(self, i: int) -> "WeylElem":
        """The reflection in the ``i``-th simple root (1-based)."""
        r = self.rank
        if not 1 <= i <= r:
            raise RootSystemError(f"simple index {i} out of range 1..{r}")
        row = self.cartan[i - 1]
        m = [[(1 if a == b else 0) for b in range(r)] for a in range(r)]
        for b in range(r):
            m[i - 1][b] -= row[b]
        return WeylElem(tuple(tuple(x) for x in m))

    def root_reflection(self, alpha) -> "WeylElem":
        alpha = self.check_vector(alpha)
        if alpha not in self.root_set:
            raise RootSystemError(f"{alpha} is not a root of {self.name}")
        r = self.rank
        ca = _matvec(self.cartan, alpha)
        rows = [
            tuple((1 if a == b else 0) - alpha[a] * ca[b] for b in range(r))
            for a in range(r)
        ]
        return WeylElem(tuple(rows))

    def identity(self) -> "WeylElem":
        r = self.rank
        return WeylElem(tuple(tuple(int(a == b) for b in range(r)) for a in range(r)))

    def weyl_group(self, limit: int = 100_000) -> list:
        """All elements of ``W`` (only sensible for small types)."""
        gens = [self.simple_reflection(i) for i in range(1, self.rank + 1)]
        start = self.identity()
        seen = {start.matrix: start}
        frontier = [start]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    x = w * g
                    if x.matrix not in seen:
                        seen[x.matrix] = x
                        nxt.append(x)
                        if len(seen) > limit:
                            raise RootSystemError(
                                f"|W({self.name})| exceeds enumeration limit {limit}"
                            )
            frontier = nxt
        return sorted(seen.values(), key=lambda w: (w.length(self), w.matrix))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan],
            "positive_roots": [list(v) for v in self.positive_roots],
            "lowest_root": list(self.lowest_root),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class WeylElem:
    """An element of ``W`` as an integer matrix on simple-root coordinates.

    Column ``j`` holds the image of ``alpha_j``.
    """

    matrix: Matrix

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        a, b = self.matrix, other.matrix
        n = len(a)
        cols = list(zip(*b))
        return WeylElem(
            tuple(tuple(sum(x * y for x, y in zip(a[i], cols[j])) for j in range(n))
                  for i in range(n))
        )

    def __call__(self, v) -> Vector:
        return _matvec(self.matrix, tuple(v))

    def inverse(self, rs: RootSystem) -> "WeylElem":
        # W preserves the form: s^T C s = C, so s^{-1} = C^{-1} s^T C.
        cinv = rs.cartan_inverse
        st = tuple(zip(*self.matrix))
        prod = _matmul(_matmul(cinv, st), rs.cartan)
        return WeylElem(tuple(tuple(int(x) for x in row) for row in prod))

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.matrix)
            for j, x in enumerate(row)
        )

    def length(self, rs: RootSystem) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(1 for b in rs.positive_roots if not _is_positive(self(b)))

    def determinant_sign(self, rs: RootSystem) -> int:
        return -1 if self.length(rs) % 2 else 1

    def reduced_word(self, rs: RootSystem) -> list:
        """Lexicographically-first right-descent reduced word (1-based)."""
        word = []
        w = self
        while True:
            for i in range(1, rs.rank + 1):
                if not _is_positive(w(rs.simple_roots[i - 1])):
                    w = w * rs.simple_reflection(i)
                    word.append(i)
                    break
            else:
                break
        return word[::-1]


def _matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, c)) for c in cols) for row in a)


def _rational_inverse(m: Matrix) -> tuple:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _enumerate_positive_roots(cartan: Matrix) -> list:
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            cv = _matvec(cartan, v)
            for i in range(r):
                w = list(v)
                w[i] -= cv[i]
                w = tuple(w)
                if _is_positive(w) and w not in found:
                    found.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(found)


def build_root_system(family: str, rank: int) -> RootSystem:
    """Build the ADE root system ``family_rank``.

    >>> len(build_root_system("D", 4).roots)
    24
    """
    family = family.upper()
    cartan = cartan_matrix(family, rank)
    pos = _enumerate_positive_roots(cartan)
    # the lowest root is the unique minimum of Phi in the dominance order
    neg = [tuple(-c for c in v) for v in pos]
    lowest = [a for a in neg if all(all(y - x >= 0 for x, y in zip(a, b)) for b in neg)]
    assert len(lowest) == 1, "dominance order has no unique minimum"
    return RootSystem(family, rank, cartan, tuple(pos), lowest[0])
