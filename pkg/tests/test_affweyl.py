from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hecke_lab.affweyl import (AffineWeylError, ExtAffineWeylElem, linear_prime_group,
                               metaplectic_group)
from hecke_lab.lattice import central_two_torsion


def bfs(group, radius):
    """Oracle: word length in Omega x| W_aff by breadth-first search."""
    dist = {k: 0 for k in group.omega_keys()}
    queue = deque(dist)
    while queue:
        k = queue.popleft()
        if dist[k] == radius:
            continue
        for gk in group.generator_keys:
            n = group.mul_keys(k, gk)
            if n not in dist:
                dist[n] = dist[k] + 1
                queue.append(n)
    return dist


@pytest.fixture(scope="module")
def a1():
    return metaplectic_group("A", 1)


def test_a1_lengths(a1):
    assert a1.length(a1.identity()) == 0
    s = a1.elem(a1.generator_keys[1])
    assert a1.length(s) == 1
    assert a1.length(a1.translation((2,))) == 2
    assert a1.length(a1.translation((1,))) == 1


def test_products(a1):
    s = a1.elem(a1.generator_keys[1])
    assert a1.multiply(s, s) == a1.identity()
    e = a1.translation((3,))
    assert a1.multiply(e, a1.identity()) == e
    assert a1.multiply(a1.translation((1,)), a1.translation((2,))) == a1.translation((3,))


def test_omega_a1(a1):
    e = a1.translation((2,))
    sigma, rest = a1.omega_decompose(e)
    assert sigma == a1.identity()
    sigma, rest = a1.omega_decompose(a1.translation((1,)))
    assert sigma != a1.identity()
    assert a1.length(sigma) == 0


@pytest.mark.parametrize("fam,rank", [("A", 1), ("A", 2), ("A", 3), ("D", 4)])
def test_omega_size(fam, rank):
    g = metaplectic_group(fam, rank)
    assert len(g.omega_keys()) == central_two_torsion(g.rs).order
    assert sorted(g.omega_keys()) == sorted(g.omega_by_alcove())
    assert all(g.length_key(k) == 0 for k in g.omega_keys())


def test_reduced_word_a2():
    g = metaplectic_group("A", 2)
    rs = g.rs
    e = g.make(rs.simple_reflection(1) * rs.simple_reflection(2), (0, 0))
    assert g.reduced_word(e).letters == (1, 2)
    assert g.reduced_word(g.identity()).letters == ()


def test_reduced_word_two_alpha(a1):
    word = g = a1.reduced_word(a1.translation((2,)))
    assert sorted(word.letters) == [0, 1]
    assert bfs(a1, 3)[a1.key(a1.translation((2,)))] == 2


def test_ball(a1):
    balls = [a1.enumerate_ball_keys(k) for k in range(5)]
    assert len(balls[0]) == len(a1.omega_keys())
    assert len(balls[1]) == len(a1.omega_keys()) * (1 + len(a1.generator_keys))
    assert all(len(balls[i]) < len(balls[i + 1]) for i in range(4))


@pytest.mark.parametrize("fam,rank,radius", [("A", 1, 6), ("A", 2, 5), ("A", 3, 3), ("D", 4, 2)])
def test_length_vs_bfs(fam, rank, radius):
    g = metaplectic_group(fam, rank)
    for k, d in bfs(g, radius).items():
        assert g.length_key(k) == d


def test_rejects_off_lattice():
    g = metaplectic_group("A", 2)
    with pytest.raises(AffineWeylError):
        g.translation((1, 0))


def test_json_roundtrip(a1):
    e = a1.multiply(a1.elem(a1.generator_keys[0]), a1.translation((3,)))
    assert ExtAffineWeylElem.from_json(e.to_json()) == e


def test_prime_group_lattice():
    g = linear_prime_group("A", 1)
    assert g.translation((Fraction(1, 2),)).lam == (Fraction(1, 2),)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A2", "A3"]), st.lists(st.integers(0, 3), max_size=8),
       st.lists(st.integers(0, 3), max_size=8))
def test_group_laws(t, w1, w2):
    g = metaplectic_group(t[0], int(t[1]))
    gens = g.generator_keys

    def ev(word):
        k = g.identity_key
        for i in word:
            k = g.mul_keys(k, gens[i % len(gens)])
        return k

    x, y = ev(w1), ev(w2)
    xy = g.mul_keys(x, y)
    assert g.mul_keys(xy, g.inv_key(xy)) == g.identity_key
    assert g.length_key(xy) <= g.length_key(x) + g.length_key(y)
    assert g.length_key(g.inv_key(x)) == g.length_key(x)
    assert g.evaluate_word_key(g.reduced_word_key(xy)) == xy
