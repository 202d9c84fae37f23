"""
Exact elimination over the base field and over the integers.

Determinants and ranks run on sympy's DomainMatrix over QQ or GF(p); integer
systems go through sympy's Hermite normal form.

Functions:
    - determinant: Determinant of a square matrix over the base field
    - rank: Row rank over the base field
    - solve_integer_system: Solve A x = b over Z, or modulo m
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import sympy
from sympy import GF, QQ
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.matrices import DomainMatrix

from .fieldcore import FieldSpec, Scalar

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Scalar]]


def _check_square(matrix: Matrix) -> int:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError(f"Expected a square matrix, got a row of length {len(row)} in a {n}-row matrix")
    return n


def _domain_matrix(matrix: Matrix, spec: FieldSpec) -> DomainMatrix:
    width = len(matrix[0])
    if spec.is_prime_field:
        domain = GF(spec.modulus)
        rows = [[domain(spec.element(x).value) for x in row] for row in matrix]
    else:
        domain = QQ
        rows = []
        for row in matrix:
            values = [spec.element(x) for x in row]
            rows.append([QQ(v.numerator, v.denominator) for v in values])
    return DomainMatrix(rows, (len(matrix), width), domain)


def _from_domain(value, dm: DomainMatrix, spec: FieldSpec) -> Scalar:
    if spec.is_prime_field:
        return spec.element(int(dm.domain.to_int(value)))
    return spec.element(Fraction(int(value.numerator), int(value.denominator)))


def determinant(matrix: Matrix, spec: FieldSpec) -> Scalar:
    """
    Exact determinant of a square matrix.

    Args:
        matrix: Square matrix of scalars of ``spec``
        spec: Base field

    Returns:
        The determinant as a scalar of ``spec``

    Example:
        >>> determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]], RATIONALS)
        Fraction(-2, 1)
    """
    n = _check_square(matrix)
    if n == 0:
        return spec.one
    dm = _domain_matrix(matrix, spec)
    return _from_domain(dm.det(), dm, spec)


def rank(matrix: Matrix, spec: FieldSpec) -> int:
    """Row rank of a (not necessarily square) matrix."""
    if not matrix or not matrix[0]:
        return 0
    return _domain_matrix(matrix, spec).rank()


def solve_integer_system(
    coefficients: Sequence[Sequence[int]],
    rhs: Sequence[int],
    modulus: int = 0,
) -> Optional[List[int]]:
    """
    Find an integer solution of ``A x = b`` (modulus 0) or ``A x = b (mod m)``.

    The congruence case appends ``m * I`` to the columns of A, so both cases
    are one system over Z. The Hermite form of A stacked under an identity
    block gives H = A U with U unimodular; H y = b is solved from the last
    equation up and x = U y. Free variables are set to zero.

    Args:
        coefficients: Integer matrix A, one row per equation
        rhs: Right-hand side b
        modulus: 0 for equations over Z, otherwise m > 1

    Returns:
        A solution vector (entries reduced to [0, m) when m > 0), or None when
        the system has no solution

    Example:
        >>> solve_integer_system([[2]], [3], 4)
        >>> solve_integer_system([[2]], [2], 4)
        [1]
    """
    if modulus < 0:
        raise ValueError(f"Modulus must be non-negative, got {modulus}")
    if len(coefficients) != len(rhs):
        raise ValueError(f"{len(coefficients)} equations but {len(rhs)} right-hand sides")
    if not coefficients:
        return []
    equations = len(coefficients)
    unknowns = len(coefficients[0])
    for r, row in enumerate(coefficients):
        if len(row) != unknowns:
            raise ValueError(f"Equation {r} has {len(row)} coefficients, expected {unknowns}")
    if unknowns == 0:
        consistent = all((int(b) % modulus if modulus else int(b)) == 0 for b in rhs)
        return [] if consistent else None

    A = sympy.Matrix([[int(x) for x in row] for row in coefficients])
    if modulus:
        A = A.row_join(modulus * sympy.eye(equations))
    width = A.cols
    # The identity block keeps every column: W = [U; A U].
    W = hermite_normal_form(sympy.eye(width).col_join(A))
    U, H = W[:width, :], W[width:, :]
    pivot_row = [max(i for i in range(W.rows) if W[i, j] != 0) for j in range(width)]

    y = [0] * width
    for i in reversed(range(equations)):
        row = width + i
        residual = int(rhs[i]) - sum(int(H[i, j]) * y[j] for j in range(width) if pivot_row[j] > row)
        pivot = next((j for j in range(width) if pivot_row[j] == row), None)
        if pivot is None:
            if residual != 0:
                return None
            continue
        entry = int(H[i, pivot])
        if residual % entry != 0:
            return None
        y[pivot] = residual // entry

    solution = [sum(int(U[r, j]) * y[j] for j in range(width)) for r in range(unknowns)]
    if modulus:
        solution = [x % modulus for x in solution]
    logger.debug(f"Integer system with {equations} equations solved modulo {modulus}: {solution}")
    return solution
