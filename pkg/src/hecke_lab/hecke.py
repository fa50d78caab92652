"""Affine Hecke algebras in the Iwahori-Matsumoto basis ``T_w``.

Relations: ``T_x T_y = T_{xy}`` whenever lengths add, and
``(T_s + 1)(T_s - q) = 0`` for every Coxeter generator (including the
affine one).  With ``q = 2`` the eigenvalues of ``T_s`` are ``2`` and
``-1``; this is the normalized generator ``f_alpha`` of the Bernstein
presentation.  Coefficients are exact: ints, Fractions or
:class:`~hecke_lab.scalars.Scalar`.

Translations.  For ``lam`` in the translation lattice write
``lam = lam1 - lam2`` with ``lam1, lam2`` dominant and set

    t(lam) = sqrt(q)^(l(lam2) - l(lam1)) * T_{lam1} * T_{lam2}^{-1}

where ``l`` is the affine length, so that ``l(lam_i)`` equals
``<lam_i, rho>`` on the metaplectic side.  This is the scalar that the
e-basis definition ``q^{-<lam, rho>} e_{lam1} e_{lam2}^{-1}`` produces
after the change of basis ``e_w = (sqrt 2)^{l(w)} T_w``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .affweyl import AffineWeylError, ExtAffineWeylElem, ExtAffineWeylGroup
from .scalars import Scalar, sqrt2_power

__all__ = [
    "HeckeError",
    "HeckeElem",
    "HeckeAlgebra",
    "BernsteinReport",
    "RelationReport",
    "hecke_from_json",
]


class HeckeError(ArithmeticError):
    pass


def _clean(terms: dict) -> dict:
    return {k: c for k, c in terms.items() if c}


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        s = v + c
        if s:
            acc[key] = s
        else:
            del acc[key]


class HeckeElem:
    """Finitely supported combination of basis elements ``T_w``.

    ``terms`` maps group keys to non-zero exact coefficients.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: dict | None = None):
        self.algebra = algebra
        self.terms = _clean(terms or {})

    def __add__(self, other: "HeckeElem") -> "HeckeElem":
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return HeckeElem(self.algebra, acc)

    def __sub__(self, other: "HeckeElem") -> "HeckeElem":
        return self + other.scale(-1)

    def __neg__(self) -> "HeckeElem":
        return self.scale(-1)

    def scale(self, c) -> "HeckeElem":
        if not c:
            return HeckeElem(self.algebra)
        return HeckeElem(self.algebra, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElem):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        raise TypeError("HeckeElem is unhashable")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, e) -> object:
        key = e if isinstance(e, tuple) else self.algebra.group.key(e)
        return self.terms.get(key, 0)

    def items(self):
        """``(ExtAffineWeylElem, coefficient)`` pairs in a stable order."""
        g = self.algebra.group
        for k in sorted(self.terms):
            yield g.elem(k), self.terms[k]

    def max_length(self) -> int:
        g = self.algebra.group
        return max((g.length_key(k) for k in self.terms), default=-1)

    def to_json(self) -> list:
        return [{"weyl": e.to_json(), "coeff": Scalar.coerce(c).to_json()}
                for e, c in self.items()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        g = self.algebra.group
        parts = []
        for k in sorted(self.terms, key=lambda k: (g.length_key(k), k)):
            e = g.elem(k)
            parts.append(f"({self.terms[k]})*T[{e.s.reduced_word(g.rs)},{list(e.lam)}]")
        return " + ".join(parts)


@dataclass
class RelationReport:
    name: str
    holds: bool
    params: dict = field(default_factory=dict)
    difference: HeckeElem | None = None

    def to_json(self) -> dict:
        out = {"relation": self.name, "holds": self.holds, "params": self.params}
        if not self.holds and self.difference is not None:
            out["difference"] = self.difference.to_json()
        return out


@dataclass
class BernsteinReport(RelationReport):
    m: int = 0


class HeckeAlgebra:
    """The Iwahori-Matsumoto algebra of an extended affine Weyl group."""

    def __init__(self, group: ExtAffineWeylGroup, q: int = 2):
        self.group = group
        self.q = q
        self._tcache: dict = {}
        self._inv_cache: dict = {}
        self._bcache: dict = {}
        self._ocache: dict = {}
        self._dominant_steps = None

    def __repr__(self) -> str:
        return f"HeckeAlgebra({self.group.label}, q={self.q})"

    # ------------------------------------------------------------ elements
    def zero(self) -> HeckeElem:
        return HeckeElem(self)

    def one(self) -> HeckeElem:
        return HeckeElem(self, {self.group.identity_key: 1})

    def basis(self, e) -> HeckeElem:
        key = e if isinstance(e, tuple) else self.group.key(e)
        return HeckeElem(self, {key: 1})

    T = basis

    def generator(self, i: int) -> HeckeElem:
        """``T_{g_i}``; index 0 is the affine generator."""
        return self.basis(self.group.generator_keys[i])

    f = generator

    def element(self, pairs) -> HeckeElem:
        acc: dict = {}
        for e, c in pairs:
            key = e if isinstance(e, tuple) else self.group.key(e)
            _add_into(acc, key, c)
        return HeckeElem(self, acc)

    # ------------------------------------------------------ multiplication
    def _rmul_gen_terms(self, terms: dict, i: int) -> dict:
        g = self.group
        q = self.q
        q1 = q - 1
        out: dict = {}
        for key, c in terms.items():
            ks = g.rmul_gen(key, i)
            if g.right_descent(key, i):
                _add_into(out, key, c * q1)
                _add_into(out, ks, c * q)
            else:
                _add_into(out, ks, c)
        return out

    def _lmul_gen_terms(self, i: int, terms: dict) -> dict:
        g = self.group
        q = self.q
        q1 = q - 1
        out: dict = {}
        for key, c in terms.items():
            ks = g.lmul_gen(i, key)
            if g.left_descent(i, key):
                _add_into(out, key, c * q1)
                _add_into(out, ks, c * q)
            else:
                _add_into(out, ks, c)
        return out

    def rmul_gen(self, x: HeckeElem, i: int) -> HeckeElem:
        return HeckeElem(self, self._rmul_gen_terms(x.terms, i))

    def lmul_gen(self, i: int, x: HeckeElem) -> HeckeElem:
        return HeckeElem(self, self._lmul_gen_terms(i, x.terms))

    def _rmul_key(self, terms: dict, key) -> dict:
        g = self.group
        word = g.reduced_word_key(key)
        sigma = g.omega_keys()[word.omega_part]
        # length-zero factors multiply without deformation
        cur = {g.mul_keys(k, sigma): c for k, c in terms.items()}
        for i in word.letters:
            cur = self._rmul_gen_terms(cur, i)
        return cur

    def _lmul_key(self, key, terms: dict) -> dict:
        g = self.group
        word = g.reduced_word_key(key)
        sigma = g.omega_keys()[word.omega_part]
        cur = terms
        for i in reversed(word.letters):
            cur = self._lmul_gen_terms(i, cur)
        return {g.mul_keys(sigma, k): c for k, c in cur.items()}

    def multiply(self, x: HeckeElem, y: HeckeElem) -> HeckeElem:
        """Bilinear product; the right factor is folded in letter by letter."""
        if len(y.terms) > len(x.terms) and len(x.terms) <= 4:
            acc: dict = {}
            for kx, cx in x.terms.items():
                part = self._lmul_key(kx, y.terms)
                for k, c in part.items():
                    _add_into(acc, k, c * cx)
            return HeckeElem(self, acc)
        acc = {}
        for ky, cy in y.terms.items():
            part = self._rmul_key(x.terms, ky)
            for k, c in part.items():
                _add_into(acc, k, c * cy)
        return HeckeElem(self, acc)

    def inverse_basis(self, e) -> HeckeElem:
        """``T_w^{-1}``, through ``T_s^{-1} = q^{-1}(T_s - (q - 1))``."""
        g = self.group
        key = e if isinstance(e, tuple) else g.key(e)
        got = self._inv_cache.get(key)
        if got is not None:
            return HeckeElem(self, got)
        word = g.reduced_word_key(key)
        sigma = g.omega_keys()[word.omega_part]
        # T_w^{-1} = T_{s_k}^{-1} ... T_{s_1}^{-1} T_{sigma^{-1}}
        cur = {g.inv_key(sigma): Fraction(1)}
        q = self.q
        for i in word.letters:
            moved = self._lmul_gen_terms(i, cur)
            for k, c in cur.items():
                _add_into(moved, k, -(q - 1) * c)
            cur = {k: c / q for k, c in moved.items()}
        self._inv_cache[key] = cur
        return HeckeElem(self, cur)

    # ---------------------------------------------------------- translations
    def dominant_steps(self) -> list:
        """For each simple root the least multiple ``k omega_i`` of the
        fundamental coweight inside the lattice, returned with ``k``."""
        if self._dominant_steps is None:
            g = self.group
            rs = g.rs
            cinv = rs.cartan_inverse
            steps = []
            for i in range(rs.rank):
                omega = [cinv[p][i] for p in range(rs.rank)]
                k = 1
                while True:
                    v = tuple(Fraction(k) * x for x in omega)
                    stored = tuple(x * g.denom for x in v)
                    if all(x.denominator == 1 for x in stored) and \
                            tuple(int(x) for x in stored) in g._stored_lattice:
                        break
                    k += 1
                steps.append((k, tuple(int(x) for x in stored)))
            self._dominant_steps = steps
        return self._dominant_steps

    def dominant_decomposition(self, lam, extra=None) -> tuple:
        """``lam = lam1 - lam2`` in stored coordinates, both dominant, with
        ``lam2`` of least length.  ``extra`` (stored, dominant) is added to
        both parts to produce a second, independent decomposition."""
        g = self.group
        rs = g.rs
        r = rs.rank
        stored = self._stored(lam)
        need = [max(0, -sum(rs.cartan[i][p] * stored[p] for p in range(r)))
                for i in range(r)]
        steps = self.dominant_steps()
        cinv = rs.cartan_inverse
        best = None
        # adding step i keeps lattice membership, so residues mod k_i suffice
        for extra_a in itertools.product(*[range(k) for k, _ in steps]):
            a = [n + e for n, e in zip(need, extra_a)]
            v = [sum(cinv[p][i] * a[i] for i in range(r)) * g.denom for p in range(r)]
            if any(Fraction(x).denominator != 1 for x in v):
                continue
            v = tuple(int(x) for x in v)
            if v not in g._stored_lattice:
                continue
            score = (sum(v), v)
            if best is None or score < best[0]:
                best = (score, v)
        lam2 = list(best[1])
        if extra is not None:
            lam2 = [x + y for x, y in zip(lam2, extra)]
        lam1 = [x + y for x, y in zip(stored, lam2)]
        return tuple(lam1), tuple(lam2)

    def _stored(self, lam) -> tuple:
        g = self.group
        stored = tuple(Fraction(x) * g.denom for x in lam)
        if any(x.denominator != 1 for x in stored):
            raise AffineWeylError(f"{lam} is not in the translation lattice")
        stored = tuple(int(x) for x in stored)
        if stored not in g._stored_lattice:
            raise AffineWeylError(f"{lam} is not in the translation lattice")
        return stored

    def translation_monomial(self, lam1, lam2) -> HeckeElem:
        """``sqrt(q)^(l2 - l1) T_{lam1} T_{lam2}^{-1}`` for stored dominant
        ``lam1, lam2``."""
        g = self.group
        rs = g.rs
        for v in (lam1, lam2):
            if any(sum(rs.cartan[i][p] * v[p] for p in range(rs.rank)) < 0
                   for i in range(rs.rank)):
                raise HeckeError(f"{v} is not dominant")
        idm = rs.identity().matrix
        k1 = g._make_key(idm, lam1)
        k2 = g._make_key(idm, lam2)
        word = g.reduced_word_key(k2)
        sigma = g.omega_keys()[word.omega_part]
        # right-multiply T_{lam1} by T_{s_k}^{-1} ... T_{s_1}^{-1} T_{sigma^{-1}};
        # each descent collapses to one term, which keeps the support small
        cur = {k1: Fraction(1)}
        for i in reversed(word.letters):
            cur = self._rmul_gen_inverse_terms(cur, i)
        sinv = g.inv_key(sigma)
        cur = {g.mul_keys(k, sinv): c for k, c in cur.items()}
        n = g.length_key(k2) - g.length_key(k1)
        factor = self._sqrt_q_power(n)
        return HeckeElem(self, {k: factor * c for k, c in cur.items()})

    def _rmul_gen_inverse_terms(self, terms: dict, i: int) -> dict:
        g = self.group
        q = self.q
        out: dict = {}
        for key, c in terms.items():
            ks = g.rmul_gen(key, i)
            if g.right_descent(key, i):
                _add_into(out, ks, c)
            else:
                _add_into(out, ks, c / q)
                _add_into(out, key, -c * (q - 1) / q)
        return out

    def _sqrt_q_power(self, n: int):
        if self.q == 2:
            return sqrt2_power(n)
        r = math.isqrt(self.q)
        if r * r != self.q:
            raise HeckeError("sqrt(q) must be rational unless q = 2")
        return Fraction(r) ** n

    def t_elem(self, lam, extra=None) -> HeckeElem:
        """The normalized translation ``t(lam)`` (Bernstein generator ``u_lam``)."""
        key = (tuple(lam), extra)
        got = self._tcache.get(key)
        if got is None:
            lam1, lam2 = self.dominant_decomposition(lam, extra)
            got = self.translation_monomial(lam1, lam2)
            self._tcache[key] = got
        return got

    u = t_elem

    # ---------------------------------------------------------- relations
    def quadratic_defect(self, i: int) -> HeckeElem:
        """``(T_s + 1)(T_s - q)`` for generator ``i``; zero when it holds."""
        t = self.generator(i)
        one = self.one()
        return (t + one) * (t - one.scale(self.q))

    def verify_quadratic(self, i: int) -> RelationReport:
        d = self.quadratic_defect(i)
        return RelationReport("quadratic", not d, {"generator": i}, d)

    def coxeter_order(self, i: int, j: int) -> int | None:
        """Order of ``g_i g_j``; ``None`` when it is infinite (affine A1)."""
        rs = self.group.rs
        a, b = self.group._alpha[i], self.group._alpha[j]
        p = rs.pairing(a, b)
        if i == j:
            return 1
        if p == 0:
            return 2
        if p == -1:
            return 3
        if p == -2:
            return None
        raise HeckeError(f"generators {i},{j}: pairing {p} gives no finite braid")

    def verify_braid(self, i: int, j: int) -> RelationReport:
        m = self.coxeter_order(i, j)
        if m is None:
            return RelationReport("braid", True, {"generators": [i, j], "order": None})
        lhs = self.one()
        rhs = self.one()
        for n in range(m):
            lhs = self.rmul_gen(lhs, i if n % 2 == 0 else j)
            rhs = self.rmul_gen(rhs, j if n % 2 == 0 else i)
        d = lhs - rhs
        return RelationReport("braid", not d, {"generators": [i, j], "order": m}, d)

    def bernstein_m(self, i: int, lam) -> int:
        """``m = <c alpha_i, lam>`` (``2m = <alpha, lam>`` metaplectically)."""
        g = self.group
        val = Fraction(g.rs.pairing(g._alpha[i], tuple(Fraction(x) for x in lam))) \
            * g.root_scale
        if val.denominator != 1:
            raise AffineWeylError(f"{lam}: non-integral pairing")
        return int(val)

    def bernstein_sides(self, i: int, lam) -> tuple:
        """Left side ``f u_lam`` and right side of the cross relation."""
        g = self.group
        rs = g.rs
        lam = tuple(lam)
        alpha = rs.simple_roots[i - 1]
        m = self.bernstein_m(i, lam)
        coroot = tuple(Fraction(a) / g.root_scale for a in alpha)
        f = self.generator(i)
        u = self.t_elem(lam)
        lhs = HeckeElem(self, self._lmul_gen_terms(i, u.terms))
        if m == 0:
            rhs = HeckeElem(self, self._rmul_gen_terms(u.terms, i))
            return lhs, rhs, m
        slam = tuple(_num(x - m * c) for x, c in zip(lam, coroot))
        us = self.t_elem(slam)
        rhs = HeckeElem(self, self._rmul_gen_terms(us.terms, i))
        acc = dict(rhs.terms)
        if m > 0:
            ks, sign = range(0, m), 1
        else:
            ks, sign = range(1, -m + 1), -1
        for k in ks:
            mu = tuple(_num(x - sign * k * c) for x, c in zip(lam, coroot))
            for key, c in self.t_elem(mu).terms.items():
                _add_into(acc, key, sign * (self.q - 1) * c)
        return lhs, HeckeElem(self, acc), m
    # the (q - 1) factor is 1 at q = 2 and restores the generic relation

    def verify_bernstein(self, i: int, lam) -> BernsteinReport:
        lhs, rhs, m = self.bernstein_sides(i, lam)
        d = lhs - rhs
        return BernsteinReport("bernstein", not d,
                               {"alpha": i, "lambda": [str(x) for x in lam]}, d, m)

    # ------------------------------------------------ Bernstein basis
    def bernstein_basis_elem(self, lam, s) -> HeckeElem:
        """``t(lam) * T_s`` for ``s`` in the finite Weyl group."""
        g = self.group
        ck = (tuple(lam), s.matrix)
        got = self._bcache.get(ck)
        if got is None:
            t = self.t_elem(lam)
            got = self._rmul_key(t.terms, g.weyl_key(s))
            self._bcache[ck] = got
        return HeckeElem(self, got)

    def bernstein_order(self, key) -> tuple:
        """Sort key of ``w = t(lam) s`` under which ``t(lam) T_s`` has the
        leading term ``T_w``: the length of ``t(lam)``, then the number of
        positive roots negative on ``lam``, then the length of ``s``."""
        got = self._ocache.get(key)
        if got is None:
            g = self.group
            rs = g.rs
            tau = g._tau(key)
            pr = [rs.pairing(beta, tau) for beta in rs.positive_roots]
            got = (sum(abs(x) for x in pr), sum(1 for x in pr if x < 0),
                   g.weyl_part(key).length(rs))
            self._ocache[key] = got
        return got

    def bernstein_lead(self, lam, s):
        """Key of ``t(lam) s``."""
        g = self.group
        return g._make_key(s.matrix, self._stored(lam))

    def express_in_bernstein_basis(self, x: HeckeElem, check: bool = True) -> dict:
        """Coefficients ``c[(lam, s_matrix)]`` with ``x = sum c t(lam) T_s``.

        Peels off leading terms under :meth:`bernstein_order`; the
        expansion of each ``t(lam) T_s`` is checked to be strictly
        triangular, which makes the coefficients unique.
        """
        g = self.group
        rest = dict(x.terms)
        coeffs: dict = {}
        order = self.bernstein_order
        while rest:
            top = max(rest, key=lambda k: (order(k), k))
            s = g.weyl_part(top)
            lam = tuple(_num(Fraction(v, g.denom)) for v in g._tau(top))
            b = self.bernstein_basis_elem(lam, s)
            lead = b.terms.get(top)
            if check:
                otop = order(top)
                if not lead or any(order(k) >= otop for k in b.terms if k != top):
                    raise HeckeError(
                        f"internal consistency error: t({lam}) T_s is not triangular"
                    )
            c = _simplify(Scalar.coerce(rest[top]) / Scalar.coerce(lead))
            coeffs[(lam, s.matrix)] = c
            for k, v in b.terms.items():
                _add_into(rest, k, -c * v)
        return coeffs

    def from_bernstein_coefficients(self, coeffs: dict) -> HeckeElem:
        from .rootsys import WeylElem

        acc: dict = {}
        for (lam, smat), c in coeffs.items():
            b = self.bernstein_basis_elem(lam, WeylElem(smat))
            for k, v in b.terms.items():
                _add_into(acc, k, c * v)
        return HeckeElem(self, acc)


def _simplify(c):
    if isinstance(c, Scalar) and c.is_rational():
        return c.a
    return c


def _num(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def hecke_from_json(algebra: HeckeAlgebra, data) -> HeckeElem:
    """Inverse of :meth:`HeckeElem.to_json`; also accepts one bare element."""
    if isinstance(data, dict):
        data = [{"weyl": data, "coeff": {"a": "1", "b": "0"}}]
    acc: dict = {}
    for term in data:
        e = ExtAffineWeylElem.from_json(term["weyl"])
        c = term.get("coeff", {"a": "1", "b": "0"})
        c = Scalar.from_json(c) if isinstance(c, dict) else Fraction(c)
        _add_into(acc, algebra.group.key(e), _simplify(Scalar.coerce(c)))
    return HeckeElem(algebra, acc)
