"""2-adic valuation and the quadratic Hilbert symbol of Q_2 on rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

__all__ = [
    "TwoAdic",
    "val2",
    "hilbert2",
    "SymbolReport",
    "steinberg_property_suite",
    "grid_property_suite",
    "factorization_check",
    "UNIT_GRID",
]

# representatives of Q_2^* / (Q_2^*)^2 plus a few products of them
UNIT_GRID = (1, -1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10)


def _as_fraction(x) -> Fraction:
    f = Fraction(x)
    if f == 0:
        raise ValueError("zero has no 2-adic valuation")
    return f


def _v2_int(n: int) -> int:
    n = abs(n)
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class TwoAdic:
    """A non-zero rational ``2^valuation * u`` with ``u`` a 2-adic unit."""

    value: Fraction
    valuation: int = field(init=False)
    unit_mod_8: int = field(init=False)

    def __post_init__(self):
        f = _as_fraction(self.value)
        object.__setattr__(self, "value", f)
        v = _v2_int(f.numerator) - _v2_int(f.denominator)
        num = f.numerator >> _v2_int(f.numerator) if f.numerator > 0 else \
            -((-f.numerator) >> _v2_int(f.numerator))
        den = f.denominator >> _v2_int(f.denominator)
        # den is odd, so its inverse mod 8 is itself
        u = (num * den) % 8
        object.__setattr__(self, "valuation", v)
        object.__setattr__(self, "unit_mod_8", u)

    @property
    def eps(self) -> int:
        """``(u - 1)/2 mod 2``."""
        return ((self.unit_mod_8 - 1) // 2) % 2

    @property
    def omega(self) -> int:
        """``(u^2 - 1)/8 mod 2``."""
        return ((self.unit_mod_8 * self.unit_mod_8 - 1) // 8) % 2


def val2(x) -> int:
    return TwoAdic(x).valuation


def hilbert2(a, b) -> int:
    """``(a, b)_2`` in ``{+1, -1}``."""
    x, y = TwoAdic(a), TwoAdic(b)
    e = (x.eps * y.eps + x.valuation * y.omega + y.valuation * x.omega) % 2
    return -1 if e else 1


@dataclass
class SymbolReport:
    name: str
    count: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "count": self.count,
                "failures": [[str(v) for v in f] for f in self.failures[:20]]}


def steinberg_property_suite(samples) -> SymbolReport:
    """``(a, 1 - a) = 1`` and ``(a, -a) = 1`` per sample, bimultiplicativity
    on all pairs."""
    rep = SymbolReport("steinberg")
    pts = [Fraction(a) for a in samples]
    for a in pts:
        if a == 0:
            continue
        if a != 1:
            rep.count += 1
            if hilbert2(a, 1 - a) != 1:
                rep.failures.append(("a,1-a", a))
        rep.count += 1
        if hilbert2(a, -a) != 1:
            rep.failures.append(("a,-a", a))
    nz = [a for a in pts if a]
    for a, b, c in product(nz, repeat=3):
        rep.count += 1
        if hilbert2(a * b, c) != hilbert2(a, c) * hilbert2(b, c):
            rep.failures.append(("bimult", a, b, c))
    return rep


def grid_property_suite(grid=UNIT_GRID) -> list:
    """Bimultiplicativity, symmetry and triviality on squares over ``grid``."""
    bim = SymbolReport("bimultiplicativity")
    sym = SymbolReport("symmetry")
    sq = SymbolReport("squares")
    for a1, a2, b in product(grid, repeat=3):
        bim.count += 1
        if hilbert2(a1 * a2, b) != hilbert2(a1, b) * hilbert2(a2, b):
            bim.failures.append((a1, a2, b))
    for a, b in product(grid, repeat=2):
        sym.count += 1
        if hilbert2(a, b) != hilbert2(b, a):
            sym.failures.append((a, b))
        sq.count += 1
        if hilbert2(a, b * b) != 1:
            sq.failures.append((a, b))
    return [bim, sym, sq]


def factorization_check(k_values=(-4, -2, 0, 2, 4), units=(1, 3, 5, 7, -1, -3),
                        extra_val=(0, 1, 2)) -> SymbolReport:
    """``(1 + t u, t) = 1`` when ``val(t) >= k`` and ``val(u) >= 2 - k``.

    ``k`` stands for ``<lambda, alpha>``, which is even on ``Y~``.
    """
    rep = SymbolReport("factorization")
    for k in k_values:
        for dt, du in product(extra_val, repeat=2):
            for ut, uu in product(units, repeat=2):
                t = Fraction(ut) * Fraction(2) ** (k + dt)
                u = Fraction(uu) * Fraction(2) ** (2 - k + du)
                rep.count += 1
                if hilbert2(1 + t * u, t) != 1:
                    rep.failures.append((k, t, u))
    return rep
