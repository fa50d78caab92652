import pytest
from hypothesis import given, strategies as st

from hecke_lab.rootsys import RootSystemError, build_root_system, parse_type


def closure_count(rs):
    """Independent oracle: close the simple roots under simple reflections."""
    seen = set(rs.simple_roots)
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for a in rs.simple_roots:
                u = rs.reflect(a, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("fam,rank,n", [("A", 1, 2), ("A", 3, 12), ("D", 4, 24),
                                        ("D", 5, 40), ("E", 6, 72), ("E", 8, 240)])
def test_root_counts(fam, rank, n):
    rs = build_root_system(fam, rank)
    assert len(rs.roots) == n == closure_count(rs)
    assert len(rs.positive_roots) == n // 2


def test_a1():
    rs = build_root_system("A", 1)
    assert set(rs.roots) == {(1,), (-1,)}
    assert rs.lowest_root == (-1,)


def test_pairing_a2():
    rs = build_root_system("A", 2)
    a1, a2 = rs.simple_roots
    assert rs.pairing(a1, a1) == 2
    assert rs.pairing(a1, a2) == -1
    assert rs.pairing(a1, (0, 0)) == 0
    assert rs.reflect(a1, a2) == (1, 1)
    assert rs.reflect(a1, a1) == (-1, 0)


def test_lowest_roots():
    assert build_root_system("A", 2).lowest_root == (-1, -1)
    # node 2 is the branch node of D4
    assert build_root_system("D", 4).lowest_root == (-1, -2, -1, -1)


@pytest.mark.parametrize("text", ["X3", "A0", "", "D3", "E5", "E9"])
def test_bad_types(text):
    with pytest.raises(RootSystemError):
        fam, rank = parse_type(text)
        build_root_system(fam, rank)


def test_parse_forms():
    assert parse_type("a_3") == ("A", 3)
    assert parse_type(" D4 ") == ("D", 4)


def test_weyl_group_orders():
    assert len(build_root_system("A", 3).weyl_group()) == 24
    assert len(build_root_system("D", 4).weyl_group()) == 192


@given(st.sampled_from(["A2", "A3", "D4"]), st.data())
def test_reflection_involution(t, data):
    rs = build_root_system(*parse_type(t))
    a = data.draw(st.sampled_from(rs.roots))
    v = tuple(data.draw(st.integers(-5, 5)) for _ in range(rs.rank))
    assert rs.reflect(a, rs.reflect(a, v)) == v
    assert rs.pairing(rs.reflect(a, v), rs.reflect(a, a)) == rs.pairing(v, a)


def test_length_matches_words():
    rs = build_root_system("A", 3)
    for w in rs.weyl_group():
        word = w.reduced_word(rs)
        assert len(word) == w.length(rs)
        u = rs.identity()
        for i in word:
            u = u * rs.simple_reflection(i)
        assert u == w
        assert w.determinant_sign(rs) == (-1) ** len(word)
