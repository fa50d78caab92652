"""Normal forms for double-coset representatives ``x_A(2) w 2^lam x_B(2)``.

``A`` and ``B`` are sets of negative roots, ``w`` is in the finite Weyl
group and ``lam`` in the coroot lattice ``Y``.  Normalization applies the
three reduction moves below once, in this order:

* drop ``a`` from ``A`` if ``<lam, -w^-1 a> >= 1``, or if
  ``<lam, w^-1 a> = 0`` and ``w^-1 a`` is positive;
* move ``a`` from ``A`` to ``B`` as ``w^-1 a`` if ``<lam, w^-1 a> = 0`` and
  ``w^-1 a`` is negative;
* drop ``b`` from ``B`` if ``<lam, b> >= 1``, or if ``<lam, b> = 0`` and
  ``w b`` is positive.

The reverse move (``B`` to ``A``) is never applied, since together with
the second move it would cycle.  The results are preferred
representatives only: two normal forms can still name the same double
coset, so the census counts normal forms, not cosets.

Condition ``A`` disjoint from ``B`` is not produced by these moves.  In
``A1`` the input ``({-a}, s, a_check, {-a})`` is already reduced and keeps
``-a`` on both sides.  The flags record the literal condition together
with ``A`` disjoint from ``w B``, which holds automatically once the
pairing conditions on ``A`` and ``B`` do.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations, product

from .lattice import modified_lattice
from .rootsys import RootSystem, WeylElem

__all__ = [
    "CosetError",
    "DoubleCosetWord",
    "DoubleCosetNF",
    "normalize",
    "supports_hecke",
    "CensusResult",
    "support_census",
    "negative_root_subsets",
]


class CosetError(ValueError):
    pass


def _root_key(v):
    return tuple(v)


@dataclass(frozen=True)
class DoubleCosetWord:
    A: frozenset
    w: WeylElem
    lam: tuple
    B: frozenset

    def check(self, rs: RootSystem) -> "DoubleCosetWord":
        neg = set(rs.negative_roots)
        for name, roots in (("A", self.A), ("B", self.B)):
            for a in roots:
                if tuple(a) not in neg:
                    raise CosetError(f"{name} contains {tuple(a)}, which is not a negative root")
        if len(self.lam) != rs.rank or any(int(x) != x for x in self.lam):
            raise CosetError(f"lambda {self.lam} is not in the coroot lattice")
        return self

    @classmethod
    def make(cls, rs: RootSystem, A=(), w=None, lam=None, B=()) -> "DoubleCosetWord":
        w = w if w is not None else rs.identity()
        lam = tuple(int(x) for x in (lam if lam is not None else (0,) * rs.rank))
        x = cls(frozenset(tuple(a) for a in A), w, lam, frozenset(tuple(b) for b in B))
        return x.check(rs)

    def to_json(self, rs: RootSystem | None = None) -> dict:
        out = {
            "A": sorted(list(a) for a in self.A),
            "w": [list(r) for r in self.w.matrix],
            "lambda": list(self.lam),
            "B": sorted(list(b) for b in self.B),
        }
        if rs is not None:
            out["w_word"] = self.w.reduced_word(rs)
        return out

    @classmethod
    def from_json(cls, rs: RootSystem, data: dict) -> "DoubleCosetWord":
        if "w" in data and data["w"] and isinstance(data["w"][0], list):
            w = WeylElem(tuple(tuple(int(x) for x in row) for row in data["w"]))
        else:
            w = rs.identity()
            for i in data.get("w_word", data.get("w", [])) or []:
                w = w * rs.simple_reflection(int(i))
        return cls.make(rs, data.get("A", ()), w, data.get("lambda"), data.get("B", ()))


@dataclass(frozen=True)
class DoubleCosetNF(DoubleCosetWord):
    """A normalized representative plus machine-checked flags.

    ``flags`` keys: ``disjoint`` (A and B share no root), ``disjoint_wB``
    (A and w B share no root), ``left_positive`` (``<lam, w^-1 a> > 0`` on
    A), ``right_nonpositive`` (``<lam, b> <= 0`` on B) and ``right_zero_negative``
    (``<lam, b> = 0`` forces ``w b < 0``).
    """

    flags: dict = field(default_factory=dict, compare=False, hash=False)
    overlap: frozenset = field(default=frozenset(), compare=False, hash=False)

    @property
    def word(self) -> DoubleCosetWord:
        return DoubleCosetWord(self.A, self.w, self.lam, self.B)

    def to_json(self, rs: RootSystem | None = None) -> dict:
        out = super().to_json(rs)
        out["flags"] = dict(self.flags)
        if self.overlap:
            out["overlap"] = sorted(list(a) for a in self.overlap)
        return out


def _certify(rs: RootSystem, A, w, lam, B) -> tuple:
    winv = w.inverse(rs)
    pos = set(rs.positive_roots)
    overlap = frozenset(A) & frozenset(B)
    wB = {tuple(w(b)) for b in B}
    flags = {
        "disjoint": not overlap,
        "disjoint_wB": not (set(A) & wB),
        "left_positive": all(rs.pairing(lam, winv(a)) > 0 for a in A),
        "right_nonpositive": all(rs.pairing(lam, b) <= 0 for b in B),
        "right_zero_negative": all(tuple(w(b)) not in pos
                                   for b in B if rs.pairing(lam, b) == 0),
    }
    return flags, overlap


def normalize(rs: RootSystem, x: DoubleCosetWord) -> DoubleCosetNF:
    x.check(rs)
    w, lam = x.w, x.lam
    winv = w.inverse(rs)
    pos = set(rs.positive_roots)
    A = set()
    B = set(x.B)
    migrated = set()
    for a in sorted(x.A):
        wa = tuple(winv(a))
        p = rs.pairing(lam, wa)
        if -p >= 1 or (p == 0 and wa in pos):
            continue
        if p == 0:
            migrated.add(wa)
            continue
        A.add(a)
    kept = set()
    for b in sorted(B):
        p = rs.pairing(lam, b)
        if p >= 1 or (p == 0 and tuple(w(b)) in pos):
            continue
        kept.add(b)
    # migrated roots satisfy <lam, b> = 0 with w b negative, so they stay;
    # a root already present in B is merged
    B = kept | migrated
    flags, overlap = _certify(rs, A, w, lam, B)
    return DoubleCosetNF(frozenset(A), w, tuple(lam), frozenset(B), flags, overlap)


def supports_hecke(rs: RootSystem, nf: DoubleCosetNF, lattice=None) -> bool:
    """Whether a Hecke function can be non-zero on this double coset."""
    if not isinstance(nf, DoubleCosetNF):
        raise CosetError("supports_hecke expects a normalized representative")
    again = normalize(rs, nf.word)
    if again != nf:
        raise CosetError("representative is not in normal form")
    lattice = lattice if lattice is not None else modified_lattice(rs)
    return not nf.A and not nf.B and tuple(nf.lam) in lattice


def negative_root_subsets(rs: RootSystem, cap: int) -> list:
    neg = sorted(rs.negative_roots)
    out = []
    for k in range(0, min(cap, len(neg)) + 1):
        out.extend(frozenset(c) for c in combinations(neg, k))
    return out


@dataclass
class CensusResult:
    type: str
    box: int | None
    cap: int
    inputs: int = 0
    normal_forms: int = 0
    supporting: int = 0
    expected: int = 0
    lattice_points: int = 0
    idempotent: bool = True
    flag_failures: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.supporting == self.expected and self.idempotent

    def to_json(self) -> dict:
        return {
            "type": self.type, "box": self.box, "cap": self.cap, "inputs": self.inputs,
            "normal_forms": self.normal_forms, "supporting": self.supporting,
            "expected": self.expected, "lattice_points": self.lattice_points,
            "idempotent": self.idempotent, "flag_failures": self.flag_failures,
            "passed": self.passed,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["w", "lambda", "A", "B", "supports"])
        for row in self.rows:
            wr.writerow(row)
        return buf.getvalue()


def _box_points(rank: int, box) -> list:
    if box is None:
        return []
    if isinstance(box, int):
        if box < 0:
            return []
        rng = range(-box, box + 1)
        return [tuple(p) for p in product(rng, repeat=rank)]
    return [tuple(int(x) for x in p) for p in box]


def support_census(rs: RootSystem, box=1, cap: int = 2, weyl=None) -> CensusResult:
    """Normalize every ``(A, w, lam, B)`` with ``|A|, |B| <= cap`` and ``lam``
    in the box (an int bound, or an explicit list of points)."""
    lattice = modified_lattice(rs)
    pts = _box_points(rs.rank, box)
    weyl = weyl if weyl is not None else rs.weyl_group()
    subsets = negative_root_subsets(rs, cap)
    res = CensusResult(rs.name, box if isinstance(box, int) else None, cap)
    res.lattice_points = sum(1 for p in pts if p in lattice)
    res.expected = len(weyl) * res.lattice_points
    seen = {}
    for w in weyl:
        for lam in pts:
            for A in subsets:
                for B in subsets:
                    res.inputs += 1
                    nf = normalize(rs, DoubleCosetWord(A, w, lam, B))
                    if normalize(rs, nf.word) != nf:
                        res.idempotent = False
                    for k, v in nf.flags.items():
                        if not v:
                            res.flag_failures[k] = res.flag_failures.get(k, 0) + 1
                    if nf not in seen:
                        seen[nf] = supports_hecke(rs, nf, lattice)
    res.normal_forms = len(seen)
    res.supporting = sum(1 for v in seen.values() if v)
    for nf, sup in sorted(seen.items(), key=lambda kv: (kv[0].w.reduced_word(rs), kv[0].lam,
                                                        sorted(kv[0].A), sorted(kv[0].B))):
        res.rows.append([
            "".join(f"s{i}" for i in nf.w.reduced_word(rs)) or "1",
            " ".join(str(x) for x in nf.lam),
            ";".join(" ".join(str(c) for c in a) for a in sorted(nf.A)),
            ";".join(" ".join(str(c) for c in b) for b in sorted(nf.B)),
            int(sup),
        ])
    return res
