from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from evoalg.fieldcore import RATIONALS, FieldSpec, Residue
from evoalg.linalg import determinant, rank, solve_integer_system

F7 = FieldSpec.prime(7)

small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


def test_determinant_examples():
    assert determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]], RATIONALS) == -2
    assert determinant([[Fraction(1, 2), 0], [0, Fraction(2, 3)]], RATIONALS) == Fraction(1, 3)
    assert determinant([[Residue(1, 7), Residue(2, 7)], [Residue(3, 7), Residue(4, 7)]], F7) == Residue(5, 7)


def test_non_square_determinant_rejected():
    with pytest.raises(ValueError):
        determinant([[Fraction(1), Fraction(2)]], RATIONALS)


@given(small_matrices)
@settings(max_examples=100, deadline=None)
def test_determinant_and_rank_agree_with_sympy(rows):
    expected = sympy.Matrix(rows)
    assert determinant(rows, RATIONALS) == Fraction(str(expected.det()))
    assert rank(rows, RATIONALS) == expected.rank()


def test_rank_over_prime_field():
    rows = [[Residue(1, 7), Residue(2, 7)], [Residue(2, 7), Residue(4, 7)]]
    assert rank(rows, F7) == 1


def test_solve_integer_system_over_z():
    assert solve_integer_system([[2, -1], [0, 2]], [2, 4]) == [2, 2]
    # 2x - 2 = 3 has no integer root
    assert solve_integer_system([[2, -1], [0, 2]], [3, 4]) is None
    assert solve_integer_system([[2]], [3]) is None


def test_solve_integer_system_modular():
    assert solve_integer_system([[2]], [3], 4) is None
    assert solve_integer_system([[2]], [2], 4) == [1]
    solution = solve_integer_system([[2, -1], [-1, 2]], [1, 5], 10006)
    assert solution is not None
    assert (2 * solution[0] - solution[1] - 1) % 10006 == 0
    assert (-solution[0] + 2 * solution[1] - 5) % 10006 == 0


@given(
    st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3), min_size=1, max_size=5),
    st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
)
@settings(max_examples=200, deadline=None)
def test_consistent_systems_are_solved(rows, x):
    rhs = [sum(a * b for a, b in zip(row, x)) for row in rows]
    solution = solve_integer_system(rows, rhs)
    assert solution is not None
    assert [sum(a * b for a, b in zip(row, solution)) for row in rows] == rhs


def test_solve_integer_system_edge_shapes():
    assert solve_integer_system([], []) == []
    assert solve_integer_system([[0, 0]], [0]) == [0, 0]
    assert solve_integer_system([[0, 0]], [1]) is None
    assert solve_integer_system([[4, 6]], [2]) is not None
    assert solve_integer_system([[3, 0], [0, 5]], [1, 2], 7) == [5, 6]


def test_determinant_over_prime_field_matches_sympy():
    rows = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    expected = sympy.Matrix(rows).det() % 7
    assert determinant([[Residue(x, 7) for x in row] for row in rows], F7) == Residue(int(expected), 7)
