from fractions import Fraction

import pytest

from hecke_lab.affweyl import metaplectic_group
from hecke_lab.hecke import HeckeAlgebra
from hecke_lab.meta import EBasisAlgebra, MetaConfig, ShimuraMap, quad_check, shimura_report
from hecke_lab.scalars import Scalar, sqrt2_power


@pytest.fixture(scope="module", params=[1, -1])
def alg(request):
    return EBasisAlgebra(metaplectic_group("A", 2), MetaConfig(request.param))


def test_config_validation():
    with pytest.raises(ValueError):
        MetaConfig(0)


def test_psi_small(alg):
    h = alg.hecke
    assert alg.psi(h.one()) == alg.one()
    eps = alg.epsilon
    assert alg.psi(h.generator(1)) == alg.e_generator(1).scale(sqrt2_power(-1) * eps)


def test_psi_homomorphism(alg):
    h = alg.hecke
    keys = sorted(alg.group.enumerate_ball_keys(2))
    for a in keys[::3]:
        for b in keys[::4]:
            x, y = h.basis(a), h.basis(b)
            assert alg.psi(x * y) == alg.psi(x) * alg.psi(y)
            assert alg.psi_inverse(alg.psi(x)) == x


@pytest.mark.parametrize("t", ["A1", "A2", "A3", "D4"])
@pytest.mark.parametrize("eps", [1, -1])
def test_quadratic_including_affine(t, eps):
    g = metaplectic_group(t[0], int(t[1]))
    for i in range(g.r + 1):
        q = quad_check(g, i, eps)
        assert q["quadratic"] and q["factored"]


def test_normalized_generator_independent_of_epsilon():
    g = metaplectic_group("A", 2)
    plus, minus = EBasisAlgebra(g, MetaConfig(1)), EBasisAlgebra(g, MetaConfig(-1))
    for i in range(3):
        assert plus.to_reference(plus.normalized_generator(i)) == \
            minus.to_reference(minus.normalized_generator(i))
        # the generator itself flips
        assert plus.to_reference(plus.e_generator(i)) == \
            minus.to_reference(minus.e_generator(i)).scale(-1)


def test_translations_independent_of_epsilon():
    g = metaplectic_group("A", 2)
    plus, minus = EBasisAlgebra(g, MetaConfig(1)), EBasisAlgebra(g, MetaConfig(-1))
    for lam in g.lattice_points(2):
        n = plus.rho_pairing(lam)
        a = plus.to_reference(plus.t_elem(lam))
        b = minus.to_reference(minus.t_elem(lam))
        assert a == b.scale(-1 if n % 2 else 1)
        assert minus.t_elem(lam) == minus.psi(minus.t_elem_T(lam)).scale(-1 if n % 2 else 1)


def test_e_inverse():
    alg = EBasisAlgebra(metaplectic_group("A", 1), MetaConfig(-1))
    for k in alg.group.enumerate_ball_keys(3):
        assert alg.e(k) * alg.e_inverse(k) == alg.one()


def test_shimura_a1_example():
    phi = ShimuraMap("A", 1)
    mu = (Fraction(1, 2),)
    assert phi.map_elem(phi.source_group.translation(mu)) == phi.target_group.translation((1,))
    assert phi(phi.source.t_elem(mu)) == phi.target.t_elem((1,))
    assert phi(phi.source.one()) == phi.target.one()


def test_shimura_bernstein_doubling():
    phi = ShimuraMap("A", 2)
    for mu in phi.source_group.lattice_points(1):
        lam = tuple(2 * x for x in mu)
        for i in (1, 2):
            lhs, rhs, m = phi.source.bernstein_sides(i, mu)
            lhs2, rhs2, m2 = phi.target.bernstein_sides(i, lam)
            assert m == m2
            assert phi(lhs) == lhs2 and phi(rhs) == rhs2


def test_shimura_report_small():
    r = shimura_report("A", 2, box=2, radius=2)
    assert r.passed, r.failures
    assert set(r.checks) >= {"generators", "ball_bijection", "bernstein", "epsilon_independence"}
