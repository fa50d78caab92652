"""Exact computations in the metaplectic Iwahori Hecke algebra over Q_2.

Modules: :mod:`rootsys` (ADE root data), :mod:`lattice` (the lattices
``Y``, ``Y~``, ``Y*`` and their quotients), :mod:`affweyl` (extended affine
Weyl groups), :mod:`hecke` (Iwahori-Matsumoto and Bernstein
presentations), :mod:`meta` (e-basis, the sign epsilon, the Shimura map),
:mod:`padic` (Hilbert symbol of Q_2) and :mod:`cosets` (double-coset normal
forms).
"""

from .scalars import Scalar
from .rootsys import RootSystem, WeylElem, build_root_system, parse_type
from .affweyl import ExtAffineWeylElem, ExtAffineWeylGroup, linear_prime_group, metaplectic_group
from .hecke import HeckeAlgebra, HeckeElem

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "RootSystem",
    "WeylElem",
    "build_root_system",
    "parse_type",
    "ExtAffineWeylElem",
    "ExtAffineWeylGroup",
    "metaplectic_group",
    "linear_prime_group",
    "HeckeAlgebra",
    "HeckeElem",
]
