from fractions import Fraction

from hypothesis import given, strategies as st

from hecke_lab.scalars import Scalar, sqrt2_power

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
scalars = st.builds(Scalar, rationals, rationals)


def test_sqrt2_squares_to_two():
    r = Scalar(0, 1)
    assert r * r == 2
    assert sqrt2_power(2) == 2
    assert sqrt2_power(-1) == Scalar(0, Fraction(1, 2))
    assert sqrt2_power(0) == 1


def test_json_roundtrip():
    x = Scalar(Fraction(-3, 4), 5)
    assert Scalar.from_json(x.to_json()) == x


def test_zero_is_falsy():
    assert not Scalar()
    assert Scalar(0, 1)


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


@given(scalars)
def test_inverse(x):
    if x:
        assert x * x.inverse() == 1
        assert x.norm() == (x * x.conjugate()).a


@given(st.integers(-12, 12), st.integers(-12, 12))
def test_sqrt2_power_additive(m, n):
    assert sqrt2_power(m) * sqrt2_power(n) == sqrt2_power(m + n)
