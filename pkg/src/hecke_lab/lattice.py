"""Full-rank lattices in the coroot basis and their finite quotients.

``Y`` is the coroot lattice (integer vectors in simple-root coordinates),
``Y*`` its dual under the invariant form, and the modified lattice is
``{y in Y : <y, y'> even for all y' in Y}``.  Bases may carry rational
entries (``Y*`` and ``Y* meet 1/2 Y`` are not integral).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, invariant_factors

from .rootsys import RootSystem, build_root_system

__all__ = [
    "LatticeError",
    "Sublattice",
    "FiniteAbelianGroup",
    "coroot_lattice",
    "dual_lattice",
    "modified_lattice",
    "coweight_lattice_prime",
    "quotient_invariants",
    "central_two_torsion",
    "ADE_TYPES",
    "expected_two_torsion",
    "table_z2",
]


class LatticeError(ValueError):
    pass


def _solve(rows, v):
    """Solve ``sum x_i rows[i] = v`` over Q; rows form a square basis."""
    n = len(rows)
    # columns of the system are the basis vectors
    aug = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise LatticeError("basis matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def _det(rows) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _normalize(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _lattice_from_generators(rank: int, gens) -> tuple:
    """Hermite basis of the lattice spanned by rational generators."""
    gens = [tuple(Fraction(c) for c in g) for g in gens]
    den = lcm(*(c.denominator for g in gens for c in g)) if gens else 1
    cols = Matrix([[int(c * den) for c in g] for g in gens]).T
    h = hermite_normal_form(cols)
    if h.shape != (rank, rank):
        raise LatticeError("generators do not span a full-rank lattice")
    basis = [tuple(_normalize(Fraction(int(h[i, j]), den)) for i in range(rank))
             for j in range(rank)]
    return tuple(basis)


@dataclass(frozen=True)
class Sublattice:
    """A full-rank lattice given by basis rows (simple-root coordinates)."""

    rank: int
    basis: tuple

    def __post_init__(self):
        if len(self.basis) != self.rank or any(len(b) != self.rank for b in self.basis):
            raise LatticeError("basis must be a square matrix")
        if _det(self.basis) == 0:
            raise LatticeError("basis is not of full rank")

    @classmethod
    def from_generators(cls, rank: int, gens) -> "Sublattice":
        return cls(rank, _lattice_from_generators(rank, list(gens)))

    def coordinates(self, v) -> tuple:
        return _solve(self.basis, v)

    def __contains__(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def contains(self, v) -> bool:
        return v in self

    def is_sublattice_of(self, other: "Sublattice") -> bool:
        return all(b in other for b in self.basis)

    def covolume(self) -> Fraction:
        return abs(_det(self.basis))

    def scaled(self, k) -> "Sublattice":
        return Sublattice(self.rank, tuple(tuple(_normalize(k * c) for c in b)
                                           for b in self.basis))

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return Sublattice.from_generators(self.rank, self.basis + other.basis)

    def dual(self) -> "Sublattice":
        """Dual under the standard dot product on coordinates."""
        n = self.rank
        inv_cols = [_solve(self.basis, tuple(int(i == j) for i in range(n)))
                    for j in range(n)]
        # row i of the dual basis: the i-th coordinate functional
        return Sublattice(n, tuple(tuple(_normalize(inv_cols[j][i]) for j in range(n))
                                   for i in range(n)))

    def intersect(self, other: "Sublattice") -> "Sublattice":
        return (self.dual() + other.dual()).dual().canonical()

    def canonical(self) -> "Sublattice":
        return Sublattice.from_generators(self.rank, self.basis)

    def same_lattice(self, other: "Sublattice") -> bool:
        return self.is_sublattice_of(other) and other.is_sublattice_of(self)

    def points_in_box(self, bound: int):
        """Integer points of the lattice with ``max |coord| <= bound``
        (coordinates in the ambient simple-root basis)."""
        from itertools import product as iproduct

        rng = range(-bound, bound + 1)
        return [v for v in iproduct(rng, repeat=self.rank) if v in self]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group by invariant factors ``d_1 | d_2 | ...``, all > 1."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        f = self.invariant_factors
        if any(d <= 1 for d in f):
            raise LatticeError("invariant factors must exceed 1")
        if any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise LatticeError("invariant factors must form a divisor chain")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def quotient_invariants(big: Sublattice, small: Sublattice) -> FiniteAbelianGroup:
    """Invariant factors of ``big / small`` (Smith normal form)."""
    if big.rank != small.rank:
        raise LatticeError("rank mismatch")
    rows = []
    for b in small.basis:
        c = big.coordinates(b)
        if any(x.denominator != 1 for x in c):
            raise LatticeError(f"{b} is not contained in the larger lattice")
        rows.append([int(x) for x in c])
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    return FiniteAbelianGroup(tuple(sorted(abs(int(d)) for d in factors if abs(int(d)) != 1)))


def coroot_lattice(rs: RootSystem) -> Sublattice:
    """``Y``: the integer span of the simple (co)roots."""
    r = rs.rank
    return Sublattice(r, rs.simple_roots)


def dual_lattice(rs: RootSystem) -> Sublattice:
    """``Y* = {v : <v, y> in Z for all y in Y}``, i.e. ``C^{-1} Z^r``."""
    return Sublattice.from_generators(rs.rank, rs.cartan_inverse)


@lru_cache(maxsize=None)
def _modified_basis(family: str, rank: int) -> tuple:
    rs = build_root_system(family, rank)
    c = rs.cartan
    r = rank
    # kernel of the pairing map Y/2Y -> (Z/2)^r, by elimination over F_2
    rows = [[c[i][j] % 2 for j in range(r)] for i in range(r)]
    pivots = []
    row = 0
    for col in range(r):
        piv = next((k for k in range(row, r) if rows[k][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        for k in range(r):
            if k != row and rows[k][col]:
                rows[k] = [(a + b) % 2 for a, b in zip(rows[k], rows[row])]
        pivots.append(col)
        row += 1
    free = [j for j in range(r) if j not in pivots]
    kernel = []
    for f in free:
        v = [0] * r
        v[f] = 1
        for k, p in enumerate(pivots):
            v[p] = rows[k][f] % 2
        kernel.append(tuple(v))
    gens = kernel + [tuple(2 * int(i == j) for j in range(r)) for i in range(r)]
    return _lattice_from_generators(r, gens)


def modified_lattice(rs: RootSystem) -> Sublattice:
    """``{y in Y : <y, y'> in 2Z for all y' in Y}``, equal to ``Y meet 2Y*``."""
    return Sublattice(rs.rank, _modified_basis(rs.family, rs.rank))


def coweight_lattice_prime(rs: RootSystem) -> Sublattice:
    """``Y* meet (1/2)Y``, the translation lattice on the linear side."""
    return dual_lattice(rs).intersect(coroot_lattice(rs).scaled(Fraction(1, 2)))


def central_two_torsion(rs: RootSystem) -> FiniteAbelianGroup:
    """``Y~ / 2Y``, isomorphic to the 2-torsion of the centre."""
    return quotient_invariants(modified_lattice(rs), coroot_lattice(rs).scaled(2))


ADE_TYPES = (
    [("A", r) for r in range(1, 9)]
    + [("D", r) for r in range(4, 9)]
    + [("E", r) for r in (6, 7, 8)]
)


def expected_two_torsion(family: str, rank: int) -> FiniteAbelianGroup:
    """The published classification of the central 2-torsion."""
    if family == "A":
        return FiniteAbelianGroup(() if rank % 2 == 0 else (2,))
    if family == "D":
        return FiniteAbelianGroup((2, 2) if rank % 2 == 0 else (2,))
    if family == "E":
        return FiniteAbelianGroup((2,) if rank == 7 else ())
    raise LatticeError(f"unknown family {family}")


def table_z2(types=ADE_TYPES) -> list:
    """Rows ``{type, computed, expected, index_Y_Ytilde, match}``."""
    out = []
    for family, rank in types:
        rs = build_root_system(family, rank)
        yt = modified_lattice(rs)
        got = central_two_torsion(rs)
        exp = expected_two_torsion(family, rank)
        idx = quotient_invariants(coroot_lattice(rs), yt)
        out.append({
            "type": rs.name,
            "computed": str(got),
            "expected": str(exp),
            "order": got.order,
            "index_Y_over_Ytilde": idx.order,
            "match": got == exp,
        })
    return out
