"""The metaplectic layer: the e-basis, the sign epsilon and the map phi.

Model of epsilon.  Both values of epsilon are realised on one reference
algebra.  For ``epsilon = +1`` the basis ``e_w`` is ``(sqrt 2)^{l(w)} T_w``
transported along ``Psi``.  For ``epsilon = -1`` the basis is twisted by the
sign of the finite part, ``e'_w = sign(s_w) e_w``, which is the effect of
tensoring the Weyl-group extension with the sign character.  In either case

    Psi_eps(T_w) = (eps / sqrt 2)^{l(w)} e^{(eps)}_w

is an algebra isomorphism, because ``w -> (-1)^{l(w)} sign(s_w)`` is a
character of the extended affine Weyl group that is trivial on every
Coxeter generator.  It can be non-trivial on length-zero elements.

Coordinates.  An :class:`EBasisAlgebra` element stores its coefficients on
``e^{(eps)}_w``; :meth:`EBasisAlgebra.to_reference` rewrites them on the
``eps = +1`` basis so that the two normalizations can be compared.

The Shimura map.  ``H(G', I')`` is the Hecke algebra of ``W x| (Y* meet Y/2)``
with affine roots ``Phi``.  Doubling translations, ``(s, mu) -> (s, 2 mu)``,
is a group isomorphism onto ``W x| Y~`` with affine roots ``Phi / 2`` that
matches generators and lengths, so on the Iwahori-Matsumoto bases it is
``T_w -> T_{phi(w)}``.  Both groups store translations in the same integer
units, so ``phi`` is the identity on keys once the lattices are known to
agree; :func:`shimura_report` checks every ingredient.
"""

from __future__ import annotations

import time
from fractions import Fraction
from dataclasses import dataclass, field

from .affweyl import AffineWeylError, ExtAffineWeylGroup, linear_prime_group, metaplectic_group
from .hecke import HeckeAlgebra, HeckeElem
from .scalars import Scalar, sqrt2_power

__all__ = [
    "MetaConfig",
    "EBasisAlgebra",
    "ShimuraMap",
    "quad_check",
    "shimura_report",
]


@dataclass(frozen=True)
class MetaConfig:
    epsilon: int = 1

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon!r}")


def _weyl_sign(group: ExtAffineWeylGroup, key) -> int:
    return group.weyl_part(key).determinant_sign(group.rs)


class EBasisAlgebra:
    """The algebra ``H`` written on the basis ``e^{(eps)}_w``.

    Elements are :class:`HeckeElem` values attached to this object; their
    product is computed by transport to the T-basis.
    """

    def __init__(self, group: ExtAffineWeylGroup, config: MetaConfig = MetaConfig(),
                 hecke: HeckeAlgebra | None = None):
        self.group = group
        self.config = config
        self.hecke = hecke or HeckeAlgebra(group)

    @property
    def epsilon(self) -> int:
        return self.config.epsilon

    def _psi_factor(self, key):
        """Coefficient of ``e_w`` in ``Psi(T_w)``."""
        n = self.group.length_key(key)
        c = sqrt2_power(-n)
        return -c if (self.epsilon == -1 and n % 2) else c

    def psi(self, x: HeckeElem) -> HeckeElem:
        return HeckeElem(self, {k: c * self._psi_factor(k) for k, c in x.terms.items()})

    def psi_inverse(self, x: HeckeElem) -> HeckeElem:
        return HeckeElem(self.hecke,
                         {k: c / self._psi_factor(k) for k, c in x.terms.items()})

    # the product of HeckeElem values attached to this algebra lands here
    def multiply(self, x: HeckeElem, y: HeckeElem) -> HeckeElem:
        return self.psi(self.hecke.multiply(self.psi_inverse(x), self.psi_inverse(y)))

    def one(self) -> HeckeElem:
        return HeckeElem(self, {self.group.identity_key: 1})

    def e(self, w) -> HeckeElem:
        key = w if isinstance(w, tuple) else self.group.key(w)
        return HeckeElem(self, {key: 1})

    def e_generator(self, i: int) -> HeckeElem:
        return self.e(self.group.generator_keys[i])

    def e_inverse(self, w) -> HeckeElem:
        """``e_w^{-1} = (eps sqrt 2)^{-l(w)} Psi(T_w^{-1})``."""
        key = w if isinstance(w, tuple) else self.group.key(w)
        inv = self.psi(self.hecke.inverse_basis(key))
        return inv.scale(self._psi_factor(key))

    def normalized_generator(self, i: int) -> HeckeElem:
        """``f_alpha = (eps / sqrt 2) e_alpha``, the image of ``T_alpha``."""
        return self.e_generator(i).scale(sqrt2_power(-1) * self.epsilon)

    def t_elem(self, lam) -> HeckeElem:
        """``q^{-<lam, rho>} e_{lam1} e_{lam2}^{-1}`` with ``q = 2``.

        ``e_{lam1} e_{lam2}^{-1} = (eps sqrt 2)^{l1 - l2} Psi(T_{lam1} T_{lam2}^{-1})``;
        the T-basis product is taken in the cheap order (right division
        by generators).
        """
        g = self.group
        h = self.hecke
        lam1, lam2 = h.dominant_decomposition(lam)
        idm = g.rs.identity().matrix
        k1 = g._make_key(idm, lam1)
        k2 = g._make_key(idm, lam2)
        n = g.length_key(k1) - g.length_key(k2)  # <lam, rho> on this lattice
        # translation_monomial carries sqrt(2)^{-n}; undo it
        mono = h.translation_monomial(lam1, lam2).scale(sqrt2_power(n))
        prod = self.psi(mono).scale(sqrt2_power(n) * (self.epsilon if n % 2 else 1))
        return prod.scale(Fraction(2) ** -n)

    def rho_pairing(self, lam) -> int:
        """``<lam, rho>``, read off as ``l(lam1) - l(lam2)``."""
        g = self.group
        lam1, lam2 = self.hecke.dominant_decomposition(lam)
        idm = g.rs.identity().matrix
        return g.length_key(g._make_key(idm, lam1)) - g.length_key(g._make_key(idm, lam2))

    def t_elem_T(self, lam) -> HeckeElem:
        """``Psi^{-1}(t_lam) = eps^{<lam, rho>} u_lam`` in the T-basis."""
        u = self.hecke.t_elem(lam)
        return u.scale(-1) if (self.epsilon == -1 and self.rho_pairing(lam) % 2) else u

    def to_reference(self, x: HeckeElem) -> HeckeElem:
        """Coefficients on the ``eps = +1`` basis."""
        if self.epsilon == 1:
            return HeckeElem(None, dict(x.terms))
        g = self.group
        return HeckeElem(None, {k: c * _weyl_sign(g, k) for k, c in x.terms.items()})

    def quadratic_defect(self, i: int) -> HeckeElem:
        """``e^2 - eps sqrt 2 e - 4``."""
        e = self.e_generator(i)
        eps_r2 = Scalar(0, self.epsilon)
        return e * e - e.scale(eps_r2) - self.one().scale(4)

    def factored_defect(self, i: int) -> HeckeElem:
        """``(eps/sqrt 2 e - 2)(eps/sqrt 2 e + 1)``."""
        f = self.normalized_generator(i)
        one = self.one()
        return (f - one.scale(2)) * (f + one)


def quad_check(group: ExtAffineWeylGroup, i: int, epsilon: int = 1) -> dict:
    """Quadratic relation for ``e_{alpha_i}`` in both written forms."""
    alg = EBasisAlgebra(group, MetaConfig(epsilon))
    d1 = alg.quadratic_defect(i)
    d2 = alg.factored_defect(i)
    return {"generator": i, "epsilon": epsilon, "quadratic": not d1, "factored": not d2}


class ShimuraMap:
    """``phi: H(G', I') -> H`` induced by ``(s, mu) -> (s, 2 mu)``."""

    def __init__(self, family: str, rank: int):
        self.source_group = linear_prime_group(family, rank)
        self.target_group = metaplectic_group(family, rank)
        self.source = HeckeAlgebra(self.source_group)
        self.target = HeckeAlgebra(self.target_group)
        self._member: dict = {}

    def map_key(self, key):
        # stored units agree: source keeps 2 mu, target keeps lambda.  The
        # lattices are W-stable, so testing tau = s(lam) is enough.
        tau = tuple(self.target_group._tau(key))
        ok = self._member.get(tau)
        if ok is None:
            ok = self._member[tau] = tau in self.target_group._stored_lattice
        if not ok:
            raise AffineWeylError("doubled translation is outside the target lattice")
        return key

    def map_elem(self, e):
        return self.target_group.elem(self.map_key(self.source_group.key(e)))

    def __call__(self, x: HeckeElem) -> HeckeElem:
        return HeckeElem(self.target, {self.map_key(k): c for k, c in x.terms.items()})

    def map_bernstein(self, coeffs: dict) -> dict:
        """Bernstein coordinates: ``u_mu T_s -> u_{2 mu} T_s``."""
        return {(tuple(_double(x) for x in mu), s): c for (mu, s), c in coeffs.items()}


def _double(x):
    y = 2 * x
    return int(y) if getattr(y, "denominator", 1) == 1 else y


@dataclass
class ShimuraReport:
    type: str
    epsilon: int
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and all(v["passed"] for v in self.checks.values())

    def to_json(self, timing: bool = False) -> dict:
        out = {"type": self.type, "epsilon": self.epsilon, "passed": self.passed,
               "checks": self.checks, "failures": self.failures[:20]}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _record(report: ShimuraReport, name: str, count: int, bad: list) -> None:
    report.checks[name] = {"passed": not bad, "count": count, "failed": len(bad)}
    report.failures.extend({"check": name, "witness": w} for w in bad[:5])


def shimura_report(family: str, rank: int, epsilon: int = 1, box: int = 3,
                   pair_bound: int = 6, radius: int = 3, epsilons=(1, -1)) -> ShimuraReport:
    """Verify that ``phi`` is an isomorphism onto ``H`` on finite windows.

    * the translation lattices satisfy ``2 (Y* meet Y/2) = Y~``;
    * generators and length-zero elements correspond and lengths agree on
      the basis ball of ``radius``, which ``phi`` maps bijectively;
    * images of translations ``u_mu`` equal the independently computed
      ``u_{2 mu}`` on the box, and both sides of every Bernstein relation
      correspond (source for ``mu``, target for ``2 mu``);
    * quadratic and braid relations hold on both sides and correspond;
    * products of ball elements are preserved;
    * the images of ``f_alpha`` and ``t_lambda`` in the reference e-basis are
      the same for every ``epsilon`` in ``epsilons``.
    """
    t0 = time.perf_counter()
    phi = ShimuraMap(family, rank)
    sg, tg = phi.source_group, phi.target_group
    rep = ShimuraReport(tg.rs.name, epsilon)
    r = tg.r

    # lattices
    doubled = sg.lattice.scaled(2)
    ok = doubled.same_lattice(tg.lattice)
    _record(rep, "lattice_doubling", 1, [] if ok else ["2(Y* meet Y/2) != Y~"])

    # generators and Omega
    bad = []
    if sg.generator_keys != tg.generator_keys:
        bad.append("generator keys differ")
    if sorted(sg.omega_keys()) != sorted(tg.omega_keys()):
        bad.append("length-zero elements differ")
    _record(rep, "generators", r + 1 + len(tg.omega_keys()), bad)

    # ball bijection and lengths
    sball = sg.enumerate_ball_keys(radius)
    tball = tg.enumerate_ball_keys(radius)
    bad = []
    images = {phi.map_key(k) for k in sball}
    if images != set(tball) or len(images) != len(sball):
        bad.append(f"ball images: {len(images)} vs {len(tball)}")
    for k, d in sball.items():
        if sg.length_key(k) != tg.length_key(phi.map_key(k)):
            bad.append(str(sg.elem(k).to_json()))
    _record(rep, "ball_bijection", len(sball), bad)

    # quadratic and braid on both sides
    bad = []
    n = 0
    for i in range(r + 1):
        n += 1
        qs = phi(phi.source.quadratic_defect(i))
        qt = phi.target.quadratic_defect(i)
        if qs or qt:
            bad.append({"generator": i})
        for j in range(i + 1, r + 1):
            try:
                bs = phi.source.verify_braid(i, j)
                bt = phi.target.verify_braid(i, j)
            except Exception as exc:  # non-simply-laced pairs do not occur here
                bad.append({"generators": [i, j], "error": str(exc)})
                continue
            n += 1
            if not (bs.holds and bt.holds):
                bad.append({"generators": [i, j]})
    _record(rep, "quadratic_braid", n, bad)

    # translations and the Bernstein relation on the box
    bad_t, bad_b = [], []
    nt = nb = 0
    for lam in tg.lattice_points(box):
        mu = tuple(Fraction(x) / 2 for x in lam)
        nt += 1
        if phi(phi.source.t_elem(mu)) != phi.target.t_elem(lam):
            bad_t.append([str(x) for x in mu])
        for i in range(1, r + 1):
            if abs(tg.rs.pairing(tg.rs.simple_roots[i - 1], lam)) > pair_bound:
                continue
            nb += 1
            ls, rs_, ms = phi.source.bernstein_sides(i, mu)
            lt, rt, mt = phi.target.bernstein_sides(i, lam)
            if ms != mt or ls != rs_ or lt != rt or phi(ls) != lt or phi(rs_) != rt:
                bad_b.append({"alpha": i, "mu": [str(x) for x in mu], "m": [ms, mt]})
    _record(rep, "translations", nt, bad_t)
    _record(rep, "bernstein", nb, bad_b)

    # u_mu u_nu = u_{mu + nu} on a small box
    bad = []
    n = 0
    small = tg.lattice_points(1)
    for a in small:
        for b in small:
            n += 1
            ma = tuple(Fraction(x) / 2 for x in a)
            mb = tuple(Fraction(x) / 2 for x in b)
            lhs = phi(phi.source.t_elem(ma) * phi.source.t_elem(mb))
            if lhs != phi.target.t_elem(tuple(x + y for x, y in zip(a, b))):
                bad.append([[str(x) for x in ma], [str(x) for x in mb]])
    _record(rep, "translation_products", n, bad)

    # products on the ball
    bad = []
    keys = sorted(sball)[: 40]
    n = 0
    for a in keys:
        for b in keys[:10]:
            n += 1
            x = phi.source.basis(a) * phi.source.basis(b)
            y = phi.target.basis(phi.map_key(a)) * phi.target.basis(phi.map_key(b))
            if phi(x) != y:
                bad.append([sg.elem(a).to_json(), sg.elem(b).to_json()])
    _record(rep, "products", n, bad)

    # independence of epsilon
    bad = []
    n = 0
    algs = [EBasisAlgebra(tg, MetaConfig(e), phi.target) for e in epsilons]
    for i in range(r + 1):
        n += 1
        imgs = []
        for alg in algs:
            fi = alg.psi(phi(phi.source.generator(i)))
            imgs.append(alg.to_reference(fi))
            if fi != alg.normalized_generator(i):
                bad.append({"f": i, "epsilon": alg.epsilon, "issue": "psi(T) != f"})
        if any(im != imgs[0] for im in imgs[1:]):
            bad.append({"f": i})
    for lam in tg.lattice_points(min(box, 2)):
        n += 1
        mu = tuple(Fraction(x) / 2 for x in lam)
        imgs = []
        for alg in algs:
            direct = alg.t_elem(lam)
            via = alg.psi(phi(phi.source.t_elem(mu)))
            if direct != via.scale(-1 if alg.epsilon == -1 and alg.rho_pairing(lam) % 2 else 1) or \
                    alg.psi_inverse(direct) != alg.t_elem_T(lam):
                bad.append({"t": [str(x) for x in lam], "epsilon": alg.epsilon})
            imgs.append(alg.to_reference(direct))
        if any(im != imgs[0] for im in imgs[1:]):
            bad.append({"t": [str(x) for x in lam]})
    _record(rep, "epsilon_independence", n, bad)

    rep.wall_time = time.perf_counter() - t0
    return rep
