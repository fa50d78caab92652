from itertools import product

import pytest

from hecke_lab.lattice import (ADE_TYPES, FiniteAbelianGroup, Sublattice,
                               central_two_torsion, coroot_lattice, modified_lattice,
                               quotient_invariants, expected_two_torsion, table_z2)
from hecke_lab.rootsys import build_root_system


def brute_modified(rs, box=3):
    """Oracle: points y with <y, e_j> even for every basis vector e_j."""
    r = rs.rank
    basis = [tuple(int(i == j) for i in range(r)) for j in range(r)]
    return {y for y in product(range(-box, box + 1), repeat=r)
            if all(rs.pairing(y, e) % 2 == 0 for e in basis)}


@pytest.mark.parametrize("fam,rank", [("A", 1), ("A", 2), ("A", 3), ("D", 4)])
def test_modified_lattice_membership(fam, rank):
    rs = build_root_system(fam, rank)
    yt = modified_lattice(rs)
    box = 3 if rank < 4 else 2
    oracle = brute_modified(rs, box)
    for y in product(range(-box, box + 1), repeat=rank):
        assert (y in yt) == (y in oracle)


def test_a1_a2_index():
    assert modified_lattice(build_root_system("A", 1)).same_lattice(
        coroot_lattice(build_root_system("A", 1)))
    rs = build_root_system("A", 2)
    assert quotient_invariants(coroot_lattice(rs), modified_lattice(rs)).order == 4


@pytest.mark.parametrize("fam,rank", ADE_TYPES)
def test_two_y_inside(fam, rank):
    rs = build_root_system(fam, rank)
    assert coroot_lattice(rs).scaled(2).is_sublattice_of(modified_lattice(rs))


def test_quotients():
    y = Sublattice.from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert quotient_invariants(y, y.scaled(2)) == FiniteAbelianGroup((2, 2, 2))
    assert quotient_invariants(y, y).is_trivial
    rs = build_root_system("A", 3)
    assert central_two_torsion(rs) == FiniteAbelianGroup((2,))


def test_table():
    rows = table_z2()
    assert len(rows) == 16
    assert all(r["match"] for r in rows)
    assert expected_two_torsion("D", 4) == FiniteAbelianGroup((2, 2))
    assert expected_two_torsion("A", 4).is_trivial


def test_invariant_factor_convention():
    g = FiniteAbelianGroup((2, 2))
    assert g.order == 4
    assert str(FiniteAbelianGroup(())) == "1"


def test_dual_contains():
    rs = build_root_system("A", 2)
    y = coroot_lattice(rs)
    assert y.is_sublattice_of(y.dual())
