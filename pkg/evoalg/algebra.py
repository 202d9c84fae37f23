"""
Evolution algebras given by their structure matrix in a natural basis.

Entry ``M[k][i]`` of the structure matrix is the coefficient of e_k in e_i**2,
so column i holds the square of the i-th basis vector. Indices in the public
API are 1-based; matrices are stored as tuples of rows.

Functions:
    - multiply: Product of two coefficient vectors
    - determinant / rank / is_perfect: Exact invariants of the structure matrix
    - apply_monomial: Change of natural basis by a monomial map
    - block_decompose: Split the matrix into W, U, L, Y blocks
    - quotient: Quotient by a basic ideal given by its index set
    - direct_sum: Block-diagonal sum of two algebras
    - zero_counts: Zero counts of the matrix, its diagonal and its blocks
"""

import logging
from dataclasses import dataclass
from typing import AbstractSet, Dict, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from . import linalg
from .fieldcore import RATIONALS, FieldSpec, Scalar

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[Scalar, ...], ...]


@dataclass(frozen=True)
class EvolutionAlgebra:
    """
    Structure matrix of an evolution algebra over ``field``.

    Example:
        >>> A = EvolutionAlgebra.from_rows([[0, 1], [1, 0]])
        >>> A.dim
        2
    """

    matrix: Rows
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        n = len(self.matrix)
        if n < 1:
            raise ValueError("An evolution algebra needs dimension at least 1")
        for k, row in enumerate(self.matrix):
            if len(row) != n:
                raise ValueError(f"Row {k + 1} has {len(row)} entries, expected {n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec = RATIONALS) -> "EvolutionAlgebra":
        """Build an algebra, coercing every entry into ``field``."""
        return cls(tuple(tuple(field.element(x) for x in row) for row in rows), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = RATIONALS) -> "EvolutionAlgebra":
        return cls.from_rows([[int(k == i) for i in range(n)] for k in range(n)], field)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def entry(self, k: int, i: int) -> Scalar:
        """Coefficient of e_k in e_i**2 (1-based)."""
        return self.matrix[k - 1][i - 1]

    def column(self, i: int) -> Tuple[Scalar, ...]:
        """Coordinates of e_i**2 (1-based)."""
        return tuple(row[i - 1] for row in self.matrix)


def multiply(A: EvolutionAlgebra, u: Sequence, v: Sequence) -> Tuple[Scalar, ...]:
    """
    Product of two elements given by their coordinates in the natural basis.

    Since e_i e_j = 0 for i != j, the product is sum_i u_i v_i e_i**2.

    Args:
        A: The algebra
        u: Coordinates of the first factor
        v: Coordinates of the second factor

    Returns:
        Coordinates of u*v

    Example:
        >>> A = EvolutionAlgebra.from_rows([[0, 1], [1, 0]])
        >>> multiply(A, [1, 0], [1, 0])
        (Fraction(0, 1), Fraction(1, 1))
    """
    n = A.dim
    if len(u) != n or len(v) != n:
        raise ValueError(f"Vectors must have length {n}, got {len(u)} and {len(v)}")
    spec = A.field
    weights = [spec.element(a) * spec.element(b) for a, b in zip(u, v)]
    return tuple(
        sum((weights[i] * A.matrix[k][i] for i in range(n) if weights[i]), spec.zero)
        for k in range(n)
    )


def determinant(A: EvolutionAlgebra) -> Scalar:
    return linalg.determinant(A.matrix, A.field)


def rank(A: EvolutionAlgebra) -> int:
    return linalg.rank(A.matrix, A.field)


def is_perfect(A: EvolutionAlgebra) -> bool:
    """A**2 = A, i.e. the structure matrix is invertible."""
    return bool(determinant(A))


@dataclass(frozen=True)
class MonomialMap:
    """
    A natural-basis change: a permutation together with nonzero scales.

    ``sigma`` is a 0-based sympy Permutation and ``scales[i]`` multiplies the
    i-th new basis vector. Acting on a structure matrix M it produces
    N[j][i] = (d_i**2 / d_j) * M[t(j)][t(i)] with t the inverse of sigma.
    """

    sigma: Permutation
    scales: Tuple[Scalar, ...]

    def __post_init__(self):
        if self.sigma.size != len(self.scales):
            raise ValueError(
                f"Permutation of size {self.sigma.size} does not match {len(self.scales)} scales"
            )
        for i, d in enumerate(self.scales):
            if not d:
                raise ValueError(f"Scale {i + 1} is zero")

    @property
    def dim(self) -> int:
        return len(self.scales)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = RATIONALS) -> "MonomialMap":
        return cls(Permutation(list(range(n))), tuple(field.one for _ in range(n)))

    @classmethod
    def from_relabeling(cls, sigma: Permutation, field: FieldSpec = RATIONALS) -> "MonomialMap":
        """
        Unit-scale map sending e_k to e_sigma(k); its action on supports is
        ``permute_pattern(sigma, .)``.

        Example:
            >>> P = MonomialMap.from_relabeling(Permutation([1, 3, 0, 2]))
            >>> P.sigma.array_form
            [1, 3, 0, 2]
        """
        return cls(sigma, tuple(field.one for _ in range(sigma.size)))

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """The map acting as ``other`` first, then ``self``."""
        if self.dim != other.dim:
            raise ValueError(f"Cannot compose maps of dimensions {self.dim} and {other.dim}")
        outer = self.sigma.array_form
        inner = other.sigma.array_form
        outer_inv = (~self.sigma).array_form
        sigma = Permutation([outer[inner[i]] for i in range(self.dim)])
        scales = tuple(self.scales[i] * other.scales[outer_inv[i]] for i in range(self.dim))
        return MonomialMap(sigma, scales)

    def inverse(self) -> "MonomialMap":
        forward = self.sigma.array_form
        return MonomialMap(~self.sigma, tuple(1 / self.scales[forward[i]] for i in range(self.dim)))


def apply_monomial(P: MonomialMap, A: EvolutionAlgebra) -> EvolutionAlgebra:
    """
    Structure matrix of A in the natural basis obtained through P.

    Args:
        P: Monomial map of the same dimension
        A: The algebra

    Returns:
        The transformed algebra

    Example:
        >>> A = EvolutionAlgebra.from_rows([[1, 1], [0, 1]])
        >>> apply_monomial(MonomialMap.from_relabeling(Permutation([1, 0])), A).matrix[1][0]
        Fraction(1, 1)
    """
    n = A.dim
    if P.dim != n:
        raise ValueError(f"Map of dimension {P.dim} cannot act on an algebra of dimension {n}")
    inv = (~P.sigma).array_form
    d = [A.field.element(x) for x in P.scales]
    rows = tuple(
        tuple(d[i] * d[i] / d[j] * A.matrix[inv[j]][inv[i]] for i in range(n))
        for j in range(n)
    )
    return EvolutionAlgebra(rows, A.field)


@dataclass(frozen=True)
class BlockDecomposition:
    """The blocks (W U / L Y) of a structure matrix split after index m."""

    m: int
    W: Rows
    U: Rows
    L: Rows
    Y: Rows

    @property
    def lower_left_zero(self) -> bool:
        return not any(x for row in self.L for x in row)


def block_decompose(A: EvolutionAlgebra, m: int) -> BlockDecomposition:
    """
    Split the structure matrix into W (m x m), U, L and Y ((n-m) x (n-m)).

    Example:
        >>> block_decompose(EvolutionAlgebra.identity(3), 1).lower_left_zero
        True
    """
    n = A.dim
    if not 1 <= m < n:
        raise ValueError(f"Split index must satisfy 1 <= m < {n}, got {m}")
    M = A.matrix
    return BlockDecomposition(
        m=m,
        W=tuple(tuple(M[k][:m]) for k in range(m)),
        U=tuple(tuple(M[k][m:]) for k in range(m)),
        L=tuple(tuple(M[k][:m]) for k in range(m, n)),
        Y=tuple(tuple(M[k][m:]) for k in range(m, n)),
    )


def quotient(A: EvolutionAlgebra, S: AbstractSet[int]) -> EvolutionAlgebra:
    """
    Quotient of A by the basic ideal spanned by the basis vectors indexed by S.

    Args:
        A: The algebra
        S: 1-based index set, closed under first descendants

    Returns:
        The algebra on the remaining basis vectors, in increasing index order
    """
    n = A.dim
    S = frozenset(S)
    if not S:
        return A
    if not S <= frozenset(range(1, n + 1)):
        raise ValueError(f"Index set {sorted(S)} is not contained in 1..{n}")
    if len(S) == n:
        raise ValueError("Cannot take the quotient by the whole algebra")
    for i in S:
        for k in range(1, n + 1):
            if A.entry(k, i) and k not in S:
                raise ValueError(f"Index set {sorted(S)} is not closed: e_{i}^2 involves e_{k}")
    keep = [k for k in range(n) if k + 1 not in S]
    logger.debug(f"Quotient by {sorted(S)} keeps indices {[k + 1 for k in keep]}")
    return EvolutionAlgebra(tuple(tuple(A.matrix[k][i] for i in keep) for k in keep), A.field)


def direct_sum(A: EvolutionAlgebra, B: EvolutionAlgebra) -> EvolutionAlgebra:
    """Block-diagonal algebra A + B, with B's basis following A's."""
    if A.field != B.field:
        raise ValueError(f"Fields differ: {A.field} and {B.field}")
    zero = A.field.zero
    rows = [tuple(row) + (zero,) * B.dim for row in A.matrix]
    rows += [(zero,) * A.dim + tuple(row) for row in B.matrix]
    return EvolutionAlgebra(tuple(rows), A.field)


def zero_counts(A: EvolutionAlgebra, m: Optional[int] = None) -> Dict[str, int]:
    """
    Count zero structure constants.

    Args:
        A: The algebra
        m: Optional split index; adds per-block counts for W, U, L and Y

    Returns:
        Dictionary with "total" and "diagonal", plus "W", "U", "L", "Y" when m is given
    """
    n = A.dim
    counts = {
        "total": sum(1 for row in A.matrix for x in row if not x),
        "diagonal": sum(1 for k in range(n) if not A.matrix[k][k]),
    }
    if m is not None:
        blocks = block_decompose(A, m)
        for name in ("W", "U", "L", "Y"):
            counts[name] = sum(1 for row in getattr(blocks, name) for x in row if not x)
    return counts
