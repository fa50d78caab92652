"""Verification sweeps behind ``hecke-lab run`` and the acceptance tests.

Every suite returns a :class:`RunReport`.  Reports are deterministic for
fixed parameters and seed; wall time is kept out of the JSON unless asked
for.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .affweyl import metaplectic_group
from .cosets import DoubleCosetWord, negative_root_subsets, normalize, support_census, supports_hecke
from .hecke import HeckeAlgebra
from .lattice import ADE_TYPES, modified_lattice, table_z2
from .meta import quad_check, shimura_report
from .padic import factorization_check, grid_property_suite, hilbert2, steinberg_property_suite
from .rootsys import build_root_system, parse_type

__all__ = ["RunReport", "SuiteError", "SUITES", "run_suite", "DEFAULT_TYPES"]


class SuiteError(ValueError):
    pass


@dataclass
class Check:
    name: str
    type: str
    count: int
    failed: int
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"name": self.name, "type": self.type, "count": self.count, "failed": self.failed}
        if self.witnesses:
            out["witnesses"] = self.witnesses[:10]
        return out


@dataclass
class RunReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed_count(self) -> int:
        return sum(1 for c in self.checks if not c.failed)

    @property
    def failed_count(self) -> int:
        return sum(1 for c in self.checks if c.failed)

    @property
    def passed(self) -> bool:
        return self.failed_count == 0

    def add(self, name: str, type_: str, count: int, witnesses: list,
            failed: int | None = None) -> Check:
        c = Check(name, type_, count, len(witnesses) if failed is None else failed,
                  list(witnesses))
        if c.failed and not c.witnesses:
            c.witnesses = [{"note": "failure without witness"}]
        self.checks.append(c)
        return c

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks_passed": self.passed_count,
            "checks_failed": self.failed_count,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.data:
            out["data"] = self.data
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def lines(self) -> list:
        rows = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} "
                f"({self.passed_count} checks passed, {self.failed_count} failed)"]
        for c in self.checks:
            mark = "ok  " if not c.failed else "FAIL"
            rows.append(f"  {mark} {c.type:<5} {c.name:<28} {c.count:>7} cases, {c.failed} failed")
        return rows


DEFAULT_TYPES = {
    "table-z2": [f"{f}{r}" for f, r in ADE_TYPES],
    "weyl-length": ["A1", "A2", "A3", "D4"],
    "hecke-braid": ["A1", "A2", "A3", "A4", "D4"],
    "hecke-quad": ["A1", "A2", "A3", "A4", "D4"],
    "bernstein": ["A1", "A2", "A3", "D4"],
    "shimura": ["A1", "A2", "A3", "D4"],
    "hilbert": [],
    "coset": ["A1", "A2"],
}

_LENGTH_RADIUS = {"A1": 8, "A2": 8}


def _types(name: str, types) -> list:
    if types is None or types == []:
        types = DEFAULT_TYPES[name]
    out = []
    for t in types:
        fam, rank = parse_type(t)
        out.append((fam, rank))
    return out


def _s(x) -> str:
    return str(x)


# ---------------------------------------------------------------- suites
def _table_z2(rep: RunReport, types, params):
    rows = table_z2(types)
    rep.data["rows"] = rows
    bad = [r for r in rows if not r["match"]]
    rep.add("two_torsion_rows", "all", len(rows), bad)


def _weyl_length(rep: RunReport, types, params):
    growth = {}
    for fam, rank in types:
        g = metaplectic_group(fam, rank)
        name = g.rs.name
        radius = params.get("radius") or _LENGTH_RADIUS.get(name, 5)
        dist = g.enumerate_ball_keys(radius)
        bad = [g.elem(k).to_json() for k, d in dist.items() if g.length_key(k) != d]
        rep.add(f"length_vs_bfs[r={radius}]", name, len(dist), bad)
        bad = [g.elem(k).to_json() for k in dist
               if g.evaluate_word_key(g.reduced_word_key(k)) != k]
        rep.add("reduced_word_roundtrip", name, len(dist), bad)
        oracle = g.omega_by_alcove()
        ok = sorted(oracle) == sorted(g.omega_keys())
        rep.add("omega_vs_alcove_stabilizer", name, len(oracle),
                [] if ok else [{"omega": len(g.omega_keys()), "oracle": len(oracle)}])
        counts = {}
        for d in dist.values():
            counts[d] = counts.get(d, 0) + 1
        growth[name] = [counts.get(i, 0) for i in range(radius + 1)]
    rep.data["sphere_sizes"] = growth


def _hecke_quad(rep: RunReport, types, params):
    eps_list = [params["epsilon"]] if params.get("epsilon") else [1, -1]
    for fam, rank in types:
        g = metaplectic_group(fam, rank)
        h = HeckeAlgebra(g)
        bad = [{"generator": i} for i in range(rank + 1) if not h.verify_quadratic(i).holds]
        rep.add("T_quadratic", g.rs.name, rank + 1, bad)
        bad = []
        for e in eps_list:
            for i in range(rank + 1):
                q = quad_check(g, i, e)
                if not (q["quadratic"] and q["factored"]):
                    bad.append(q)
        rep.add("e_quadratic", g.rs.name, len(eps_list) * (rank + 1), bad)


def _hecke_braid(rep: RunReport, types, params):
    seed = params.get("seed", 0)
    ntriples = params.get("triples", 200)
    radius = params.get("radius") or 4
    for fam, rank in types:
        g = metaplectic_group(fam, rank)
        h = HeckeAlgebra(g)
        bad, n = [], 0
        for i in range(rank + 1):
            for j in range(i + 1, rank + 1):
                n += 1
                r = h.verify_braid(i, j)
                if not r.holds:
                    bad.append(r.to_json())
        rep.add("braid", g.rs.name, n, bad)
        bad = [{"generator": i} for i in range(rank + 1) if not h.verify_quadratic(i).holds]
        rep.add("quadratic", g.rs.name, rank + 1, bad)
        rng = random.Random(f"{seed}:{g.rs.name}")
        ball = sorted(g.enumerate_ball_keys(radius))
        bad = []
        for _ in range(ntriples):
            a, b, c = (rng.choice(ball) for _ in range(3))
            x, y, z = h.basis(a), h.basis(b), h.basis(c)
            if (x * y) * z != x * (y * z):
                bad.append([g.elem(k).to_json() for k in (a, b, c)])
        rep.add(f"associativity[r={radius}]", g.rs.name, ntriples, bad)


def _bernstein(rep: RunReport, types, params):
    box = params.get("box") or 3
    bound = params.get("pair_bound", 6)
    seed = params.get("seed", 0)
    nsamples = params.get("samples", 50)
    for fam, rank in types:
        g = metaplectic_group(fam, rank)
        h = HeckeAlgebra(g)
        rs = g.rs
        pts = g.lattice_points(box)
        bad, n = [], 0
        for lam in pts:
            for i in range(1, rank + 1):
                if abs(rs.pairing(rs.simple_roots[i - 1], lam)) > bound:
                    continue
                n += 1
                r = h.verify_bernstein(i, lam)
                if not r.holds:
                    bad.append({"alpha": i, "lambda": [_s(x) for x in lam], "m": r.m})
        rep.add(f"bernstein[box={box}]", rs.name, n, bad)
        pool, b = pts, box
        while len(pool) < nsamples:  # rank 1 needs a wider box for distinct samples
            b += 2
            pool = g.lattice_points(b)
        bad = well_definedness_failures(h, pool, nsamples, seed)
        rep.add("t_well_defined", rs.name, nsamples, bad)


def well_definedness_failures(h: HeckeAlgebra, pts, nsamples: int, seed) -> list:
    """Compare ``t(lam)`` from the least decomposition with one enlarged by
    a random non-zero dominant lattice vector."""
    g = h.group
    rng = random.Random(f"{seed}:{g.rs.name}:t")
    sample = rng.sample(pts, min(nsamples, len(pts)))
    steps = [st for _, st in h.dominant_steps()]
    bad = []
    for lam in sample:
        coeffs = [rng.randint(0, 1) for _ in steps]
        if not any(coeffs):
            coeffs[rng.randrange(len(steps))] = 1
        extra = tuple(sum(c * st[p] for c, st in zip(coeffs, steps)) for p in range(g.r))
        if h.t_elem(lam) != h.t_elem(lam, extra=extra):
            bad.append({"lambda": [_s(x) for x in lam], "extra": list(extra)})
    return bad


def _shimura(rep: RunReport, types, params):
    eps = params.get("epsilon") or 1
    box = params.get("box") or 3
    for fam, rank in types:
        r = shimura_report(fam, rank, epsilon=eps, box=box, radius=params.get("radius") or 3)
        for name, c in r.checks.items():
            wit = [f["witness"] for f in r.failures if f["check"] == name]
            if c["failed"] and not wit:
                wit = [{"check": name}]
            rep.add(name, r.type, c["count"], wit, failed=c["failed"])


def _hilbert(rep: RunReport, types, params):
    values = [((2, 2), 1), ((-1, -1), -1)]
    for t in (5, -3, 13, 21):  # t = 5 mod 8
        values += [((2, t), -1), ((-1, t), 1), ((t, t), 1)]
    bad = [{"a": a, "b": b, "expected": e, "got": hilbert2(a, b)}
           for (a, b), e in values if hilbert2(a, b) != e]
    rep.add("published_values", "Q2", len(values), bad)
    rep.data["values"] = [{"a": a, "b": b, "symbol": hilbert2(a, b)} for (a, b), _ in values]
    for r in grid_property_suite():
        rep.add(r.name, "Q2", r.count, [[_s(v) for v in f] for f in r.failures])
    samples = [2, -1, 3, -3, 5, 6, 10, -2, "1/2", "3/4", "-7/2", "5/8", 17, -15]
    r = steinberg_property_suite(samples)
    rep.add("steinberg", "Q2", r.count, [[_s(v) for v in f] for f in r.failures])
    r = factorization_check()
    rep.add("factorization_even_k", "Q2", r.count, [[_s(v) for v in f] for f in r.failures])


def _coset(rep: RunReport, types, params):
    box = params.get("box")
    box = 2 if box is None else box
    cap = params.get("cap", 2)
    for fam, rank in types:
        rs = build_root_system(fam, rank)
        res = support_census(rs, box, cap)
        rep.add("idempotent", rs.name, res.inputs, [] if res.idempotent else [{"idempotent": False}])
        for flag in ("left_positive", "right_nonpositive", "right_zero_negative",
                     "disjoint_wB", "disjoint"):
            n_bad = res.flag_failures.get(flag, 0)
            rep.add(f"flag_{flag}", rs.name, res.inputs,
                    _flag_witnesses(rs, box, cap, flag) if n_bad else [], failed=n_bad)
        rep.add("census_supporting", rs.name, 1,
                [] if res.supporting == res.expected else
                [{"supporting": res.supporting, "expected": res.expected}])
        # the predicate on the trivial-unipotent forms
        lattice = modified_lattice(rs)
        bad, n = [], 0
        for w in rs.weyl_group():
            for lam in _box(rank, box):
                n += 1
                nf = normalize(rs, DoubleCosetWord(frozenset(), w, lam, frozenset()))
                if supports_hecke(rs, nf, lattice) != (lam in lattice):
                    bad.append({"w": w.reduced_word(rs), "lambda": list(lam)})
        rep.add("supports_iff_in_Ytilde", rs.name, n, bad)
        rep.data.setdefault("census", {})[rs.name] = res.to_json()


def _box(rank: int, box: int):
    from itertools import product
    return [tuple(p) for p in product(range(-box, box + 1), repeat=rank)]


def _flag_witnesses(rs, box, cap, flag, limit=3) -> list:
    out = []
    subsets = negative_root_subsets(rs, cap)
    for w in rs.weyl_group():
        for lam in _box(rs.rank, box):
            for A in subsets:
                for B in subsets:
                    nf = normalize(rs, DoubleCosetWord(A, w, lam, B))
                    if not nf.flags[flag]:
                        out.append({"input": DoubleCosetWord(A, w, lam, B).to_json(rs),
                                    "normal_form": nf.to_json(rs)})
                        if len(out) >= limit:
                            return out
    return out


SUITES = {
    "table-z2": _table_z2,
    "weyl-length": _weyl_length,
    "hecke-braid": _hecke_braid,
    "hecke-quad": _hecke_quad,
    "bernstein": _bernstein,
    "shimura": _shimura,
    "hilbert": _hilbert,
    "coset": _coset,
}


def run_suite(name: str, types=None, **params) -> RunReport:
    """Run one named sweep; ``types`` like ``["A2", "D4"]`` (default: the
    suite's standard list)."""
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    tlist = _types(name, types)
    clean = {k: v for k, v in params.items() if v is not None}
    clean.setdefault("seed", 0)
    rep = RunReport(name, {"types": [f"{f}{r}" for f, r in tlist], **clean})
    t0 = time.perf_counter()
    SUITES[name](rep, tlist, clean)
    rep.wall_time = time.perf_counter() - t0
    return rep
