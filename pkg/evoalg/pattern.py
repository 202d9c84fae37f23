"""
Support patterns and the permutation actions on them.

A support pattern records which structure constants are nonzero. Families of
algebras are orbits of patterns under a permutation subgroup; orbit
representatives are the lexicographically least relabeling, read row-major
with False < True.

Functions:
    - support: Pattern of an algebra
    - generically_perfect: Transversal existence by bipartite matching
    - permute_pattern: Relabel a pattern by a permutation
    - canonical_pattern: Orbit representative under a subgroup
    - allowed_permutations: Relabelings preserving a block form
    - fingerprint: Relabeling-invariant summary of a pattern
    - enumerate_patterns: Patterns with fixed cells, in binary counting order
    - parse_cycles / format_cycles: 1-based cycle notation
"""

import logging
import re
from dataclasses import dataclass, field
from typing import (
    AbstractSet,
    Callable,
    Dict,
    Iterable,
    Iterator,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from networkx.algorithms import bipartite
import networkx as nx
from sympy.combinatorics import Permutation, PermutationGroup

from .algebra import EvolutionAlgebra
from .errors import ParseError
from .graphmod import (
    Adjacency,
    associated_graph,
    canonical_graph,
    sorted_degree_profile,
)

logger = logging.getLogger(__name__)

Bits = Tuple[Tuple[bool, ...], ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class SupportPattern:
    """
    Zero/nonzero shape of an n x n structure matrix.

    Example:
        >>> SupportPattern.from_text("* 0\\n0 *").zero_count
        2
    """

    bits: Bits

    def __post_init__(self):
        n = len(self.bits)
        if n < 1:
            raise ValueError("A support pattern needs at least one row")
        if any(len(row) != n for row in self.bits):
            raise ValueError("Support pattern must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "SupportPattern":
        return cls(tuple(tuple(bool(x) for x in row) for row in rows))

    @classmethod
    def from_text(cls, text: str) -> "SupportPattern":
        """Rows over {0, *}, separated by newlines or "/"; spaces are ignored."""
        rows = [r.replace(" ", "") for r in re.split(r"[\n/]", text) if r.strip()]
        for row in rows:
            if set(row) - {"0", "*"}:
                raise ParseError(f"Pattern row {row!r} may only contain 0 and *")
        return cls(tuple(tuple(c == "*" for c in row) for row in rows))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "SupportPattern":
        """Cell (k, i) is set when bit k*n + i of ``mask`` is set (0-based)."""
        return cls(tuple(tuple(bool(mask >> (k * n + i) & 1) for i in range(n)) for k in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def key(self) -> Tuple[bool, ...]:
        """Row-major cells, the order used for canonical forms."""
        return tuple(x for row in self.bits for x in row)

    @property
    def zero_count(self) -> int:
        return sum(1 for row in self.bits for x in row if not x)

    @property
    def diag_zero_count(self) -> int:
        return sum(1 for k in range(self.n) if not self.bits[k][k])

    def column_mask(self, i: int) -> int:
        """Bitmask of the rows set in column i (0-based)."""
        return sum(1 << k for k in range(self.n) if self.bits[k][i])

    def lower_left_zero(self, m: int) -> bool:
        return not any(self.bits[k][i] for k in range(m, self.n) for i in range(m))

    def __str__(self):
        return "\n".join(" ".join("*" if x else "0" for x in row) for row in self.bits)


def support(M: EvolutionAlgebra) -> SupportPattern:
    return SupportPattern.from_rows((bool(x) for x in row) for row in M.matrix)


def as_pattern(obj) -> SupportPattern:
    """Accept either an algebra or a pattern."""
    if isinstance(obj, SupportPattern):
        return obj
    if isinstance(obj, EvolutionAlgebra):
        return support(obj)
    raise TypeError(f"Expected an EvolutionAlgebra or SupportPattern, got {type(obj).__name__}")


def generically_perfect(P: SupportPattern) -> bool:
    """
    Whether some instantiation of P has nonzero determinant.

    That happens exactly when P has a transversal, i.e. a perfect matching
    between columns and rows in the bipartite graph of its nonzero cells.

    Example:
        >>> generically_perfect(SupportPattern.from_text("* *\\n* 0"))
        True
    """
    n = P.n
    graph = nx.Graph()
    columns = [("c", i) for i in range(n)]
    graph.add_nodes_from(columns, bipartite=0)
    graph.add_nodes_from((("r", k) for k in range(n)), bipartite=1)
    graph.add_edges_from(
        (("c", i), ("r", k)) for k in range(n) for i in range(n) if P.bits[k][i]
    )
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=columns)
    return len(matching) == 2 * n


def permute_pattern(sigma: Permutation, P: SupportPattern) -> SupportPattern:
    """
    Relabel P so that index k becomes sigma(k): the result has P[t(j)][t(i)]
    at position (j, i), t the inverse of sigma.

    Example:
        >>> str(permute_pattern(Permutation([1, 0]), SupportPattern.from_text("* *\\n0 0")))
        '0 0\\n* *'
    """
    n = P.n
    if sigma.size != n:
        raise ValueError(f"Permutation of size {sigma.size} cannot act on a {n}x{n} pattern")
    t = (~sigma).array_form
    return SupportPattern(tuple(tuple(P.bits[t[j]][t[i]] for i in range(n)) for j in range(n)))


def parse_cycles(text: str, n: int) -> Permutation:
    """
    Parse 1-based cycle notation such as "(1,2,4,3)", "(1,2)(3,4)" or "id".

    Args:
        text: Disjoint cycles or "id"
        n: Degree of the permutation

    Returns:
        The permutation as a 0-based sympy Permutation

    Example:
        >>> parse_cycles("(1,2,4,3)", 4).array_form
        [1, 3, 0, 2]
    """
    stripped = text.replace(" ", "")
    array = list(range(n))
    if stripped in ("", "id", "()"):
        return Permutation(array)
    if _CYCLE_RE.sub("", stripped):
        raise ParseError(f"Malformed cycle notation {text!r}")
    seen = set()
    for body in _CYCLE_RE.findall(stripped):
        try:
            cycle = [int(x) - 1 for x in body.split(",")]
        except ValueError:
            raise ParseError(f"Malformed cycle ({body}) in {text!r}")
        for x in cycle:
            if not 0 <= x < n:
                raise ParseError(f"Index {x + 1} in {text!r} is outside 1..{n}")
            if x in seen:
                raise ParseError(f"Cycles in {text!r} are not disjoint")
            seen.add(x)
        for k, x in enumerate(cycle):
            array[x] = cycle[(k + 1) % len(cycle)]
    return Permutation(array)


def format_cycles(sigma: Permutation) -> str:
    cycles = sigma.cyclic_form
    if not cycles:
        return "id"
    return "".join("(" + ",".join(str(x + 1) for x in cycle) + ")" for cycle in cycles)


@dataclass(frozen=True)
class PermSubgroup:
    """
    An explicit finite permutation group, elements sorted by array form.

    Example:
        >>> len(PermSubgroup.symmetric(3))
        6
    """

    degree: int
    elements: Tuple[Permutation, ...]

    @classmethod
    def generated(cls, degree: int, generators: Iterable[Permutation] = ()) -> "PermSubgroup":
        gens = [Permutation(list(range(degree)))] + list(generators)
        for g in gens:
            if g.size != degree:
                raise ValueError(f"Generator {format_cycles(g)} has size {g.size}, expected {degree}")
        elements = sorted(PermutationGroup(gens).generate(), key=lambda p: p.array_form)
        return cls(degree, tuple(elements))

    @classmethod
    def from_text(cls, degree: int, text: str) -> "PermSubgroup":
        """Generators in cycle notation separated by whitespace, e.g. "(1,2) (2,3)"."""
        return cls.generated(degree, [parse_cycles(g, degree) for g in text.split()])

    @classmethod
    def symmetric(cls, degree: int) -> "PermSubgroup":
        generators = [Permutation([[k, k + 1]], size=degree) for k in range(degree - 1)]
        return cls.generated(degree, generators)

    @classmethod
    def trivial(cls, degree: int) -> "PermSubgroup":
        return cls.generated(degree)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, sigma: Permutation) -> bool:
        return sigma in self.elements

    def stabilizer(self, fixed: AbstractSet[int]) -> "PermSubgroup":
        """Elements fixing every 1-based index in ``fixed``."""
        kept = tuple(g for g in self.elements if all(g.array_form[i - 1] == i - 1 for i in fixed))
        return PermSubgroup(self.degree, kept)


def canonical_pattern(P: SupportPattern, G: PermSubgroup) -> SupportPattern:
    """
    Least relabeling of P under G, row-major with False < True.

    Example:
        >>> str(canonical_pattern(SupportPattern.from_text("* *\\n0 0"), PermSubgroup.symmetric(2)))
        '0 0\\n* *'
    """
    return min((permute_pattern(g, P) for g in G), key=lambda q: q.key)


@dataclass(frozen=True)
class BlockSpec:
    """
    Block form to be preserved by relabelings.

    Attributes:
        split: Indices 1..split span the ideal block (None: no block constraint)
        fixed: 1-based indices every relabeling must fix
        exchange: For split = n - 1, also allow swapping index n with every
            index whose row has no off-diagonal entry
    """

    split: Optional[int] = None
    fixed: AbstractSet[int] = field(default_factory=frozenset)
    exchange: bool = False


def allowed_permutations(P: SupportPattern, spec: BlockSpec) -> PermSubgroup:
    """
    Relabelings that keep P's block form.

    These are the permutations mapping {1..split} onto itself and fixing the
    indices in ``spec.fixed``.

    Args:
        P: Pattern whose lower-left block (rows after split, columns up to split) is zero
        spec: The block form

    Returns:
        The subgroup of allowed relabelings

    Example:
        >>> P = SupportPattern.from_text("* * * 0/0 * * *" "/0 * * 0/0 0 * *")
        >>> [format_cycles(g) for g in allowed_permutations(P, BlockSpec(split=1, fixed={2}))]
        ['id', '(3,4)']
    """
    n = P.n
    full = PermSubgroup.symmetric(n)
    if spec.split is None:
        return full.stabilizer(spec.fixed)
    m = spec.split
    if not 1 <= m < n:
        raise ValueError(f"Split must satisfy 1 <= split < {n}, got {m}")
    if not P.lower_left_zero(m):
        raise ValueError(f"Pattern is not in block form for split {m}: lower-left block is nonzero")

    kept = [g for g in full if all(g.array_form[i] < m for i in range(m))]
    group = PermSubgroup(n, tuple(kept)).stabilizer(spec.fixed)
    if spec.exchange and m == n - 1:
        # imported here: ideals depends on this module
        from .ideals import exchangeable_indices

        swaps = [Permutation([[i - 1, n - 1]], size=n) for i in exchangeable_indices(P)]
        if swaps:
            group = PermSubgroup.generated(n, list(group.elements) + swaps)
    logger.debug(f"Allowed relabelings for split {m}: {len(group)} elements")
    return group


@dataclass(frozen=True)
class Fingerprint:
    """Relabeling invariants of a pattern."""

    zero_count: int
    diag_zero_count: int
    degree_multiset: Tuple[Tuple[int, int], ...]
    graph_class: Adjacency


def fingerprint(P) -> Fingerprint:
    """
    Zero counts, sorted degree pairs and canonical graph of a pattern.

    Example:
        >>> fingerprint(SupportPattern.from_text("* *\\n0 *")).zero_count
        1
    """
    P = as_pattern(P)
    graph = associated_graph(P)
    return Fingerprint(
        zero_count=P.zero_count,
        diag_zero_count=P.diag_zero_count,
        degree_multiset=sorted_degree_profile(graph),
        graph_class=canonical_graph(graph),
    )


def block_zero_cells(n: int, m: int) -> Dict[Tuple[int, int], bool]:
    """Fixed-cell map forcing the lower-left block after split m to zero (0-based cells)."""
    return {(k, i): False for k in range(m, n) for i in range(m)}


def enumerate_patterns(
    n: int,
    fixed: Optional[Mapping[Tuple[int, int], bool]] = None,
    predicates: Sequence[Callable[[SupportPattern], bool]] = (),
) -> Iterator[SupportPattern]:
    """
    Patterns of size n agreeing with ``fixed`` and passing every predicate.

    Free cells are counted in binary, the first free cell (row-major) being
    the most significant bit, so the all-zero assignment comes first.

    Args:
        n: Pattern size
        fixed: Map from 0-based (row, column) to a forced value
        predicates: Filters applied in order

    Yields:
        Matching patterns in deterministic order

    Example:
        >>> sum(1 for _ in enumerate_patterns(2, predicates=[generically_perfect]))
        7
    """
    fixed = dict(fixed or {})
    for (k, i) in fixed:
        if not (0 <= k < n and 0 <= i < n):
            raise ValueError(f"Fixed cell {(k, i)} lies outside a {n}x{n} pattern")
    free = [(k, i) for k in range(n) for i in range(n) if (k, i) not in fixed]
    width = len(free)
    for counter in range(1 << width):
        cells = dict(fixed)
        for pos, cell in enumerate(free):
            cells[cell] = bool(counter >> (width - 1 - pos) & 1)
        P = SupportPattern(tuple(tuple(cells[(k, i)] for i in range(n)) for k in range(n)))
        if all(pred(P) for pred in predicates):
            yield P
