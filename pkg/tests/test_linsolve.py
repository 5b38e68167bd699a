from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cheborbit.linsolve import UnderdeterminedError, solve_exact_linear


def test_identity_system():
    sol = solve_exact_linear([[1, 0], [0, 1]], [5, -3])
    assert sol == [5, -3]


def test_diagonal_fractions():
    sol = solve_exact_linear([[2, 0], [0, 3]], [1, 1])
    assert sol == [Fraction(1, 2), Fraction(1, 3)]


def test_inconsistent_returns_none():
    assert solve_exact_linear([[1, 1], [1, 1]], [0, 1]) is None


def test_underdetermined_raises():
    with pytest.raises(UnderdeterminedError):
        solve_exact_linear([[1, 1], [2, 2]], [3, 6])


def test_overdetermined_consistent():
    sol = solve_exact_linear([[1, 0], [0, 1], [1, 1]], [2, 3, 5])
    assert sol == [2, 3]
    assert solve_exact_linear([[1, 0], [0, 1], [1, 1]], [2, 3, 6]) is None


@given(
    entries=st.lists(st.integers(-6, 6), min_size=4, max_size=4),
    target=st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5), min_size=2, max_size=2),
)
def test_random_solvable_systems_round_trip(entries, target):
    a, b, c, d = entries
    if a * d - b * c == 0:
        return
    matrix = [[a, b], [c, d]]
    rhs = [a * target[0] + b * target[1], c * target[0] + d * target[1]]
    assert solve_exact_linear(matrix, rhs) == target
