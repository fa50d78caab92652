"""Extended affine Weyl groups ``W x| L`` with ``L`` a translation lattice.

Convention.  The pair ``(s, lam)`` denotes the element ``s * t(lam)``, written ``s 2^lam``
multiplicatively: it acts on the real span of the roots by
``v -> s(v + lam)``.  Products are composition of these maps, which gives

    (s1, lam1) * (s2, lam2) = (s1 s2, s2^{-1} lam1 + lam2).

The affine reflections are taken in the roots ``c * Phi`` (``c = 1/2``
for the metaplectic group, ``c = 1`` for the linear group ``G/Z_2``).  The
fundamental alcove is ``{v : 0 < <c a, v> < 1 for every positive root a}``
and the Coxeter generators are the simple reflections together with the
reflection in the wall ``<c alpha_0, v> = -1`` (``alpha_0`` the lowest root).

Internally an element is stored as a hashable *key*: the columns of ``s``
(the images of the simple roots) flattened, followed by ``tau = s(lam)``
measured in units of ``1/denom``.  With ``tau`` the map reads
``v -> s v + tau`` and both left and right multiplication by a generator
are cheap.  Everything is integer arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .lattice import Sublattice, coweight_lattice_prime, modified_lattice
from .rootsys import RootSystem, WeylElem, build_root_system

__all__ = [
    "AffineWeylError",
    "ExtAffineWeylElem",
    "AffineWord",
    "ExtAffineWeylGroup",
    "metaplectic_group",
    "linear_prime_group",
]


class AffineWeylError(ValueError):
    pass


@dataclass(frozen=True)
class ExtAffineWeylElem:
    """``s * t(lam)``; ``lam`` in real simple-root coordinates."""

    s: WeylElem
    lam: tuple

    def to_json(self) -> dict:
        return {
            "s": [list(r) for r in self.s.matrix],
            "lambda": [str(x) if isinstance(x, Fraction) and x.denominator != 1 else int(x)
                       for x in self.lam],
        }

    @classmethod
    def from_json(cls, data) -> "ExtAffineWeylElem":
        s = WeylElem(tuple(tuple(int(x) for x in row) for row in data["s"]))
        lam = tuple(_num(x) for x in data["lambda"])
        return cls(s, lam)


def _num(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class AffineWord:
    """``omega[omega_part] * g[letters[0]] * g[letters[1]] * ...``.

    Letter 0 is the affine generator, ``i >= 1`` the simple reflections.
    """

    omega_part: int
    letters: tuple

    def to_json(self) -> dict:
        return {"omega": self.omega_part, "letters": list(self.letters)}


def _positive(v) -> bool:
    for c in v:
        if c:
            return c > 0
    return False


class ExtAffineWeylGroup:
    """``W x| L`` with affine roots ``root_scale * Phi``.

    ``denom`` fixes the storage unit: translations are kept as integer
    multiples of ``1/denom``.  ``lattice`` is the translation lattice in
    real coordinates.
    """

    def __init__(self, rs: RootSystem, lattice: Sublattice, root_scale=Fraction(1, 2),
                 denom: int = 1, label: str = ""):
        self.rs = rs
        self.r = r = rs.rank
        self.root_scale = Fraction(root_scale)
        self.denom = denom
        self.label = label or rs.name
        self.lattice = lattice
        k = self.root_scale / denom
        self._kn, self._kd = k.numerator, k.denominator
        # the Coxeter part translates by the coroots of c*Phi, i.e. (1/c) Y
        step = Fraction(denom) / self.root_scale
        if step.denominator != 1:
            raise AffineWeylError("coroot lattice is not integral in storage units")
        self._qstep = int(step)
        for b in lattice.basis:
            for a in rs.positive_roots:
                if (rs.pairing(a, b) * self.root_scale).denominator != 1:
                    raise AffineWeylError("affine roots are not integral on the lattice")
        self._stored_lattice = lattice.scaled(denom)
        C = rs.cartan
        self._C = C
        self._pos = rs.positive_roots
        self._two_rho = rs.two_rho
        self._alpha = [rs.lowest_root] + list(rs.simple_roots)  # a_0, a_1..a_r
        # rows a^T C, so <a, v> = dot(row, v)
        self._alpha_rows = [tuple(sum(a[p] * C[p][q] for p in range(r)) for q in range(r))
                            for a in self._alpha]
        self._neighbors = [[j for j in range(r) if C[i][j] != 0] for i in range(r)]
        self._len_cache: dict = {}
        self.identity_key = self._make_key(rs.identity().matrix, (0,) * r)
        self.generator_keys = self._build_generators()
        self._omega = None

    # ------------------------------------------------------------------ keys
    def _make_key(self, s_rows, tau) -> tuple:
        r = self.r
        cols = [s_rows[i][j] for j in range(r) for i in range(r)]
        return tuple(cols) + tuple(tau)

    def _cols(self, key):
        r = self.r
        return [key[j * r:(j + 1) * r] for j in range(r)]

    def _tau(self, key):
        return key[self.r * self.r:]

    def _apply_s(self, key, v):
        r = self.r
        out = [0] * r
        for j, c in enumerate(v):
            if c:
                base = j * r
                for i in range(r):
                    out[i] += c * key[base + i]
        return out

    def _pair(self, row, v) -> int:
        """``<c a, v>`` for a stored vector ``v``; exact integer."""
        n = self._kn * sum(x * y for x, y in zip(row, v))
        q, rem = divmod(n, self._kd)
        if rem:
            raise AffineWeylError("non-integral affine pairing: translation outside lattice")
        return q

    def _pair_vec(self, a, v) -> int:
        C = self._C
        r = self.r
        row = [sum(a[p] * C[p][q] for p in range(r)) for q in range(r)]
        return self._pair(row, v)

    def _build_generators(self):
        rs = self.rs
        gens = []
        theta_refl = rs.root_reflection(rs.lowest_root)
        # v -> v - (<c a0, v> + 1) a0 / c, so tau = -a0 / c
        tau0 = [-Fraction(x) * self.denom / self.root_scale for x in rs.lowest_root]
        gens.append(self._make_key(theta_refl.matrix, tuple(int(x) for x in tau0)))
        for i in range(1, self.r + 1):
            gens.append(self._make_key(rs.simple_reflection(i).matrix, (0,) * self.r))
        return gens

    def mul_keys(self, k1, k2):
        r = self.r
        c1 = self._cols(k1)
        cols2 = self._cols(k2)
        new_cols = []
        for col in cols2:
            new_cols.extend(self._apply_s(k1, col))
        t = self._apply_s(k1, self._tau(k2))
        t1 = self._tau(k1)
        del c1
        return tuple(new_cols) + tuple(a + b for a, b in zip(t, t1))

    def inv_key(self, key):
        rs = self.rs
        s = WeylElem(self._rows(key))
        sinv = s.inverse(rs)
        tau = sinv(self._tau(key))
        return self._make_key(sinv.matrix, tuple(-x for x in tau))

    def _rows(self, key):
        r = self.r
        return tuple(tuple(key[j * r + i] for j in range(r)) for i in range(r))

    def rmul_gen(self, key, i: int):
        """``key * g_i``."""
        r = self.r
        if i == 0:
            return self.mul_keys(key, self.generator_keys[0])
        i -= 1
        C = self._C
        cols = list(key[:r * r])
        ci = key[i * r:(i + 1) * r]
        for j in self._neighbors[i]:
            cij = C[i][j]
            base = j * r
            for p in range(r):
                cols[base + p] -= cij * ci[p]
        return tuple(cols) + key[r * r:]

    def lmul_gen(self, i: int, key):
        """``g_i * key``."""
        r = self.r
        if i == 0:
            return self.mul_keys(self.generator_keys[0], key)
        i -= 1
        row = self._alpha_rows[i + 1]
        out = list(key)
        for b in range(0, r * r + r, r):
            v = key[b:b + r]
            out[b + i] -= sum(x * y for x, y in zip(row, v))
        return tuple(out)

    def right_descent(self, key, i: int) -> bool:
        """``l(key * g_i) < l(key)``."""
        a = self._alpha[i]
        sa = self._apply_s(key, a)
        const = (1 if i == 0 else 0) - self._pair_vec(sa, self._tau(key))
        return const < 0 or (const == 0 and not _positive(sa))

    def left_descent(self, i: int, key) -> bool:
        """``l(g_i * key) < l(key)``."""
        row = self._alpha_rows[i]
        const = self._pair(row, self._tau(key)) + (1 if i == 0 else 0)
        if const:
            return const < 0
        s2rho = self._apply_s(key, self._two_rho)
        return sum(x * y for x, y in zip(row, s2rho)) < 0

    def length_key(self, key) -> int:
        cache = self._len_cache
        got = cache.get(key)
        if got is not None:
            return got
        r = self.r
        C = self._C
        tau = self._tau(key)
        ctau = [sum(C[p][q] * tau[q] for q in range(r)) for p in range(r)]
        kn, kd = self._kn, self._kd
        total = 0
        for beta in self._pos:
            g = self._apply_s(key, beta)
            n = kn * sum(x * y for x, y in zip(g, ctau))
            val, rem = divmod(n, kd)
            if rem:
                raise AffineWeylError("translation outside the lattice")
            # <c beta, lam> = <c s beta, tau>
            if _positive(g):
                total += abs(val)
            else:
                total += abs(val + 1)
        if len(cache) < 2_000_000:
            cache[key] = total
        return total

    # ------------------------------------------------ element <-> key views
    def key(self, e: ExtAffineWeylElem):
        lam = self.rs.check_vector(e.lam)
        stored = [Fraction(x) * self.denom for x in lam]
        if any(x.denominator != 1 for x in stored):
            raise AffineWeylError(f"lambda={lam} not representable in {self.label}")
        stored = tuple(int(x) for x in stored)
        if stored not in self._stored_lattice:
            raise AffineWeylError(f"lambda={lam} is not in the translation lattice")
        tau = e.s(stored)
        return self._make_key(e.s.matrix, tuple(tau))

    def elem(self, key) -> ExtAffineWeylElem:
        s = WeylElem(self._rows(key))
        lam = s.inverse(self.rs)(self._tau(key))
        lam = tuple(_num(Fraction(x, self.denom)) for x in lam)
        return ExtAffineWeylElem(s, lam)

    def make(self, s=None, lam=None) -> ExtAffineWeylElem:
        """Element from a Weyl matrix (or reduced word) and a translation."""
        rs = self.rs
        if s is None:
            s = rs.identity()
        elif isinstance(s, (list, tuple)) and (not s or isinstance(s[0], int)):
            w = rs.identity()
            for i in s:
                w = w * rs.simple_reflection(i)
            s = w
        elif not isinstance(s, WeylElem):
            s = WeylElem(tuple(tuple(r) for r in s))
        if lam is None:
            lam = (0,) * rs.rank
        e = ExtAffineWeylElem(s, tuple(_num(x) for x in lam))
        self.key(e)
        return e

    def translation(self, lam) -> ExtAffineWeylElem:
        return self.make(None, lam)

    def translation_key(self, lam):
        stored = tuple(int(Fraction(x) * self.denom) for x in lam)
        return self._make_key(self.rs.identity().matrix, stored)

    def weyl_key(self, s: WeylElem):
        return self._make_key(s.matrix, (0,) * self.r)

    def lam_stored(self, key):
        s = WeylElem(self._rows(key))
        return s.inverse(self.rs)(self._tau(key))

    def weyl_part(self, key) -> WeylElem:
        return WeylElem(self._rows(key))

    # ------------------------------------------------------------- group API
    def identity(self) -> ExtAffineWeylElem:
        return self.elem(self.identity_key)

    def generators(self) -> list:
        return [self.elem(k) for k in self.generator_keys]

    def multiply(self, e1, e2) -> ExtAffineWeylElem:
        return self.elem(self.mul_keys(self.key(e1), self.key(e2)))

    def invert(self, e) -> ExtAffineWeylElem:
        return self.elem(self.inv_key(self.key(e)))

    def length(self, e) -> int:
        """Iwahori-Matsumoto root count for ``s t(lam)``:

        ``sum_{b>0, s b>0} |<c b, lam>| + sum_{b>0, s b<0} |<c b, lam> + 1|``.
        """
        return self.length_key(self.key(e))

    def omega_keys(self) -> list:
        """Length-zero elements, one per class of ``L`` mod the coroots."""
        if self._omega is None:
            reps = self._coset_reps()
            out = []
            for mu in reps:
                key = self._make_key(self.rs.identity().matrix, mu)
                key = self._descend(key)[0]
                out.append(key)
            self._omega = sorted(set(out), key=lambda k: (k != self.identity_key, k))
        return self._omega

    @property
    def omega(self) -> list:
        return [self.elem(k) for k in self.omega_keys()]

    def _coset_reps(self) -> list:
        m = self._qstep
        basis = [tuple(int(x) for x in b) for b in self._stored_lattice.basis]
        zero = (0,) * self.r
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for v in frontier:
                for b in basis:
                    w = tuple((x + y) % m for x, y in zip(v, b))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(seen)

    def _descend(self, key):
        """Strip right descents (smallest index first) down to ``Omega``."""
        letters = []
        while True:
            for i in range(self.r + 1):
                if self.right_descent(key, i):
                    key = self.rmul_gen(key, i)
                    letters.append(i)
                    break
            else:
                break
        letters.reverse()
        return key, letters

    def omega_index(self, key) -> int:
        return self.omega_keys().index(key)

    def reduced_word_key(self, key) -> AffineWord:
        sigma, letters = self._descend(key)
        return AffineWord(self.omega_index(sigma), tuple(letters))

    def reduced_word(self, e) -> AffineWord:
        return self.reduced_word_key(self.key(e))

    def evaluate_word_key(self, word: AffineWord):
        key = self.omega_keys()[word.omega_part]
        for i in word.letters:
            key = self.rmul_gen(key, i)
        return key

    def evaluate_word(self, word: AffineWord) -> ExtAffineWeylElem:
        return self.elem(self.evaluate_word_key(word))

    def omega_decompose(self, e):
        """``e = sigma * w'`` with ``sigma`` in ``Omega`` and ``w'`` Coxeter."""
        key = self.key(e)
        sigma, _ = self._descend(key)
        rest = self.mul_keys(self.inv_key(sigma), key)
        return self.elem(sigma), self.elem(rest)

    def in_coxeter_part(self, key) -> bool:
        lam = self.lam_stored(key)
        return all(x % self._qstep == 0 for x in lam)

    def enumerate_ball_keys(self, radius: int) -> dict:
        """Breadth-first search from ``Omega``: key -> word distance."""
        dist = {k: 0 for k in self.omega_keys()}
        frontier = list(dist)
        for d in range(1, radius + 1):
            nxt = []
            for key in frontier:
                for i in range(self.r + 1):
                    k2 = self.rmul_gen(key, i)
                    if k2 not in dist:
                        dist[k2] = d
                        nxt.append(k2)
            frontier = nxt
        return dist

    def enumerate_ball(self, radius: int) -> list:
        if radius < 0:
            raise AffineWeylError("radius must be non-negative")
        dist = self.enumerate_ball_keys(radius)
        return [self.elem(k) for k in sorted(dist, key=lambda k: (dist[k], k))]

    # ------------------------------------------------------- oracles/helpers
    def alcove_barycenter(self) -> tuple:
        """Barycentre of the fundamental alcove (real coordinates)."""
        rs = self.rs
        r = self.r
        theta = rs.highest_root
        # <c alpha_j, b> = 1 / ((r + 1) m_j)
        p = [Fraction(1, (r + 1) * m) / self.root_scale for m in theta]
        cinv = rs.cartan_inverse
        return tuple(sum(cinv[i][j] * p[j] for j in range(r)) for i in range(r))

    def omega_by_alcove(self, weyl=None) -> list:
        """``Stab`` of the alcove, found by mapping its barycentre; needs ``W``."""
        rs = self.rs
        b = self.alcove_barycenter()
        weyl = weyl if weyl is not None else rs.weyl_group()
        out = []
        for s in weyl:
            sb = tuple(sum(Fraction(x) * y for x, y in zip(row, b)) for row in s.matrix)
            tau = tuple((bi - si) * self.denom for bi, si in zip(b, sb))
            if any(t.denominator != 1 for t in tau):
                continue
            tau = tuple(int(t) for t in tau)
            lam = s.inverse(rs)(tau)
            if lam in self._stored_lattice:
                out.append(self._make_key(s.matrix, tau))
        return sorted(out)

    def lattice_points(self, bound: int) -> list:
        """Translation-lattice points with real coordinates in ``[-bound, bound]``."""
        rng = range(-bound * self.denom, bound * self.denom + 1)
        pts = [v for v in iproduct(rng, repeat=self.r) if v in self._stored_lattice]
        return [tuple(_num(Fraction(x, self.denom)) for x in v) for v in pts]

    def is_dominant(self, lam) -> bool:
        return all(self.rs.pairing(a, lam) >= 0 for a in self.rs.simple_roots)

    def __repr__(self) -> str:
        return f"ExtAffineWeylGroup({self.label})"


@lru_cache(maxsize=None)
def metaplectic_group(family: str, rank: int) -> ExtAffineWeylGroup:
    """``W x| Y~`` with affine roots ``(1/2) Phi``."""
    rs = build_root_system(family, rank)
    return ExtAffineWeylGroup(rs, modified_lattice(rs), Fraction(1, 2), 1, rs.name)


@lru_cache(maxsize=None)
def linear_prime_group(family: str, rank: int) -> ExtAffineWeylGroup:
    """``W x| (Y* meet Y/2)`` with affine roots ``Phi`` (the group ``G/Z_2``)."""
    rs = build_root_system(family, rank)
    return ExtAffineWeylGroup(rs, coweight_lattice_prime(rs), Fraction(1), 2,
                              rs.name + "'")
