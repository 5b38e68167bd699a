from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cheborbit.scalars import ConductorMismatch, CycRational, NotRationalError


def test_omega_squares_to_minus_one_minus_omega():
    w = CycRational.omega()
    assert w * w == CycRational((-1, -1), 1, 3)
    assert w * w * w == 1
    assert str(w * w) == "-1-W"


def test_i_squares_to_minus_one():
    i = CycRational.i_unit()
    assert i * i == -1
    assert i ** 4 == 1


def test_rational_demotion_makes_equality_structural():
    # W - W is rational zero, and (2 + 0*W) equals plain 2
    w = CycRational.omega()
    assert (w - w) == 0
    assert CycRational((2, 0), 1, 3) == CycRational(2)
    assert hash(CycRational((2, 0), 1, 3)) == hash(CycRational(2))


def test_normalization_lowest_terms():
    x = CycRational(6, 4)
    assert x.num == (3,) and x.den == 2
    y = CycRational((-2, 4), 6, 4)
    assert y.den == 3 and y.num == (-1, 2)


def test_mixing_conductors_raises():
    with pytest.raises(ConductorMismatch):
        CycRational.omega() + CycRational.i_unit()


def test_inverse_in_both_towers():
    w = CycRational.omega()
    x = (w * 2 + 3) / 5
    assert x * x.inverse() == 1
    i = CycRational.i_unit()
    y = i * 7 - 2
    assert y * y.inverse() == 1
    with pytest.raises(ZeroDivisionError):
        CycRational(0).inverse()


def test_fraction_round_trip_and_guards():
    x = CycRational(Fraction(-3, 7))
    assert x.to_fraction() == Fraction(-3, 7)
    assert not x.is_integer()
    assert CycRational(4).is_integer()
    with pytest.raises(NotRationalError):
        CycRational.i_unit().to_fraction()


def test_complex_embedding():
    w = CycRational.omega()
    z = w.to_complex()
    assert abs(z ** 3 - 1) < 1e-12
    assert abs(z.real + 0.5) < 1e-12
    assert abs(CycRational.i_unit().to_complex() - 1j) < 1e-15


rationals = st.fractions(min_value=-40, max_value=40, max_denominator=12)
gauss = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 5))


@given(a=rationals, b=rationals, c=rationals)
def test_field_axioms_on_rationals(a, b, c):
    x, y, z = CycRational(a), CycRational(b), CycRational(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if b != 0:
        assert (x / y) * y == x


@given(p=gauss, q=gauss)
def test_gaussian_ring_axioms(p, q):
    i = CycRational.i_unit()
    x = CycRational(p[0], p[2]) + i * p[1]
    y = CycRational(q[0], q[2]) + i * q[1]
    assert (x + y) * (x - y) == x * x - y * y
    expected = complex(x.to_complex() * y.to_complex())
    assert abs((x * y).to_complex() - expected) < 1e-9
