"""
Descendants, basic ideals and the predicates built on them.

A basic ideal is spanned by a set S of natural basis vectors; this happens
exactly when S is closed under first descendants. All predicates here only
look at the support of the structure matrix, so each function accepts an
EvolutionAlgebra or a SupportPattern. Index sets are frozensets of 1-based
indices.

Functions:
    - first_descendants / descendants / closure
    - is_basic_ideal / closed_sets / maximal_basic_ideals
    - is_basic_simple / is_simple / is_irreducible
    - satisfies_condition_323
    - noninvariance_witness, exchangeable_index(es), two_ideal_extension
"""

import itertools
import logging
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, List, Optional, Tuple, Union

from . import graphmod
from .algebra import EvolutionAlgebra, is_perfect
from .pattern import SupportPattern, as_pattern, generically_perfect

logger = logging.getLogger(__name__)

IndexSet = FrozenSet[int]
AlgebraLike = Union[EvolutionAlgebra, SupportPattern]


def _column_masks(P: SupportPattern) -> List[int]:
    return [P.column_mask(i) for i in range(P.n)]


def _to_set(mask: int) -> IndexSet:
    return frozenset(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def _to_mask(S: AbstractSet[int], n: int) -> int:
    mask = 0
    for i in S:
        if not 1 <= i <= n:
            raise ValueError(f"Index {i} is outside 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def _closure_mask(columns: List[int], mask: int) -> int:
    result = mask
    frontier = mask
    while frontier:
        reached = 0
        for i in range(len(columns)):
            if frontier >> i & 1:
                reached |= columns[i]
        frontier = reached & ~result
        result |= reached
    return result


def _is_closed_mask(columns: List[int], mask: int) -> bool:
    return all(columns[i] & ~mask == 0 for i in range(len(columns)) if mask >> i & 1)


def _sort_sets(sets) -> List[IndexSet]:
    return sorted(sets, key=lambda s: sorted(s))


def _is_perfect(A: AlgebraLike) -> bool:
    if isinstance(A, EvolutionAlgebra):
        return is_perfect(A)
    return generically_perfect(A)


def first_descendants(A: AlgebraLike, i: int) -> IndexSet:
    """
    Indices k with e_k occurring in e_i**2.

    Example:
        >>> first_descendants(SupportPattern.from_text("0 * *\\n* 0 *\\n0 0 *"), 3)
        frozenset({1, 2, 3})
    """
    P = as_pattern(A)
    if not 1 <= i <= P.n:
        raise ValueError(f"Index {i} is outside 1..{P.n}")
    return _to_set(P.column_mask(i - 1))


def descendants(A: AlgebraLike, i: int) -> IndexSet:
    """Every index reachable from i in one or more steps; i itself only if reachable."""
    P = as_pattern(A)
    if not 1 <= i <= P.n:
        raise ValueError(f"Index {i} is outside 1..{P.n}")
    columns = _column_masks(P)
    start = columns[i - 1]
    return _to_set(_closure_mask(columns, start))


def closure(A: AlgebraLike, S: AbstractSet[int]) -> IndexSet:
    """Smallest set containing S and closed under first descendants."""
    P = as_pattern(A)
    columns = _column_masks(P)
    return _to_set(_closure_mask(columns, _to_mask(S, P.n)))


def is_basic_ideal(A: AlgebraLike, S: AbstractSet[int]) -> bool:
    """
    Whether S spans a proper nonzero basic ideal.

    The empty set and the full index set are rejected.
    """
    P = as_pattern(A)
    mask = _to_mask(S, P.n)
    if mask == 0 or mask == (1 << P.n) - 1:
        return False
    return _is_closed_mask(_column_masks(P), mask)


def closed_sets(A: AlgebraLike) -> List[IndexSet]:
    """All proper nonempty closed index sets, ordered by size then lexicographically."""
    P = as_pattern(A)
    columns = _column_masks(P)
    found = [
        _to_set(mask)
        for mask in range(1, (1 << P.n) - 1)
        if _is_closed_mask(columns, mask)
    ]
    return sorted(found, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class IdealReport:
    """
    Basic ideal lattice summary.

    ``basis_independent`` is False for non-perfect algebras, where the
    closed sets depend on the chosen natural basis.
    """

    all_closed_proper_sets: Tuple[IndexSet, ...]
    maximal_basic_ideals: Tuple[IndexSet, ...]
    is_basic_simple: bool
    basis_independent: bool

    @property
    def maximal_dimension(self) -> int:
        return len(self.maximal_basic_ideals[0]) if self.maximal_basic_ideals else 0


def maximal_basic_ideals(A: AlgebraLike) -> IdealReport:
    """
    Enumerate closed sets and keep those of the largest size.

    Args:
        A: Algebra or pattern (perfect for basis-independent answers)

    Returns:
        IdealReport with maximal ideals sorted lexicographically

    Example:
        >>> report = maximal_basic_ideals(SupportPattern.from_text("0 * * 0/* 0 * *" "/0 0 * 0/0 0 0 *"))
        >>> [sorted(s) for s in report.maximal_basic_ideals]
        [[1, 2, 3], [1, 2, 4]]
    """
    sets = closed_sets(A)
    perfect = _is_perfect(A)
    if not perfect:
        logger.warning("Basic ideals of a non-perfect algebra depend on the natural basis")
    if sets:
        top = max(len(s) for s in sets)
        maximal = _sort_sets(s for s in sets if len(s) == top)
    else:
        maximal = []
    return IdealReport(
        all_closed_proper_sets=tuple(sets),
        maximal_basic_ideals=tuple(maximal),
        is_basic_simple=not sets,
        basis_independent=perfect,
    )


def is_basic_simple(A: AlgebraLike) -> bool:
    """Every basis vector generates the whole algebra."""
    P = as_pattern(A)
    columns = _column_masks(P)
    full = (1 << P.n) - 1
    return all(_closure_mask(columns, 1 << i) == full for i in range(P.n))


def is_simple(A: AlgebraLike) -> bool:
    """Perfect with a strongly connected graph."""
    if not _is_perfect(A):
        return False
    return graphmod.is_strongly_connected(graphmod.associated_graph(as_pattern(A)))


def is_irreducible(A: AlgebraLike) -> bool:
    """
    Whether the associated graph is connected.

    For perfect algebras this is equivalent to not splitting as a direct sum
    of two nonzero ideals. The answer is still returned for singular input,
    with a warning.
    """
    if not _is_perfect(A):
        logger.warning("Irreducibility from graph connectivity is only established for perfect algebras")
    return graphmod.is_connected(graphmod.associated_graph(as_pattern(A)))


def satisfies_condition_323(A: AlgebraLike) -> Optional[Tuple[IndexSet, IndexSet]]:
    """
    Find two distinct closed 3-sets meeting in a closed 2-set.

    Returns:
        The lexicographically first such pair (S, T) with S < T, or None

    Example:
        >>> satisfies_condition_323(SupportPattern.from_text("0 * * 0/* 0 * *" "/0 0 * 0/0 0 0 *"))
        (frozenset({1, 2, 3}), frozenset({1, 2, 4}))
    """
    P = as_pattern(A)
    columns = _column_masks(P)
    candidates = (sum(1 << i for i in combo) for combo in itertools.combinations(range(P.n), 3))
    triples = [mask for mask in candidates if _is_closed_mask(columns, mask)]
    for first, second in itertools.combinations(triples, 2):
        meet = first & second
        if bin(meet).count("1") == 2 and _is_closed_mask(columns, meet):
            return _to_set(first), _to_set(second)
    return None


def _require_last_index_split(P: SupportPattern) -> None:
    n = P.n
    if n < 2:
        raise ValueError("Needs dimension at least 2")
    last = P.bits[n - 1]
    if not last[n - 1] or any(last[:n - 1]):
        raise ValueError(
            "Last row must have a nonzero diagonal entry and zeros elsewhere "
            "(the last index must span a one-dimensional quotient)"
        )


def exchangeable_indices(A: AlgebraLike) -> List[int]:
    """
    Indices i < n that occur in no e_j**2 with j != i.

    Such an index can trade places with n while keeping the last row of the
    structure matrix in the required form.
    """
    P = as_pattern(A)
    _require_last_index_split(P)
    n = P.n
    return [
        i + 1
        for i in range(n - 1)
        if not any(P.bits[i][j] for j in range(n) if j != i)
    ]


def exchangeable_index(A: AlgebraLike) -> Optional[int]:
    indices = exchangeable_indices(A)
    return indices[0] if indices else None


def two_ideal_extension(A: AlgebraLike) -> Optional[int]:
    """
    Smallest i < n such that R = {1..n-1} minus {i} and R plus {n} are both closed.

    This is the ideal-side restatement of ``exchangeable_index``.
    """
    P = as_pattern(A)
    _require_last_index_split(P)
    n = P.n
    columns = _column_masks(P)
    lower = (1 << (n - 1)) - 1
    for i in range(n - 1):
        rest = lower & ~(1 << i)
        if _is_closed_mask(columns, rest) and _is_closed_mask(columns, rest | 1 << (n - 1)):
            return i + 1
    return None


def noninvariance_witness(A: AlgebraLike) -> Optional[int]:
    """
    Index showing that the zero count of the W block is not invariant.

    For a structure matrix whose last row is (0, ..., 0, w), returns the
    smallest exchangeable i whose column has a different number of nonzero
    entries than column n; swapping e_i and e_n then changes the zeros in W.

    Returns:
        The index, or None when the zero count of W is basis independent
    """
    P = as_pattern(A)
    last = P.column_mask(P.n - 1)
    for i in exchangeable_indices(P):
        if bin(P.column_mask(i - 1)).count("1") != bin(last).count("1"):
            return i
    return None
