"""
The directed graph associated with an evolution algebra.

There is an edge i -> j exactly when e_j occurs in e_i**2, so the adjacency
matrix is the transpose of the support of the structure matrix. Vertices are
1-based in every public function.

Functions:
    - associated_graph: Graph of a support pattern
    - is_strongly_connected / is_connected: Directed and undirected connectivity
    - strongly_connected_components: Components as 1-based vertex sets
    - degree_profile: (out, in) degree pairs in vertex order
    - canonical_graph: Lexicographically least adjacency over all relabelings
    - graphs_isomorphic: Isomorphism test through networkx
    - format_graph / parse_graph: 0/1 text rows
"""

import itertools
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, FrozenSet, List, Tuple

import networkx as nx

from .errors import ParseError

if TYPE_CHECKING:
    from .pattern import SupportPattern

logger = logging.getLogger(__name__)

MAX_CANONICAL_VERTICES = 8

Adjacency = Tuple[Tuple[bool, ...], ...]


@dataclass(frozen=True)
class DirectedGraph:
    """Simple digraph with loops; ``adjacency[i][j]`` is the edge i -> j (0-based)."""

    adjacency: Adjacency

    def __post_init__(self):
        n = len(self.adjacency)
        if any(len(row) != n for row in self.adjacency):
            raise ValueError("Adjacency matrix must be square")

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as 1-based (tail, head) pairs."""
        return [
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(self.n)
            if self.adjacency[i][j]
        ]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges())
        return graph


def associated_graph(P: "SupportPattern") -> DirectedGraph:
    """
    Graph of a support pattern: edge i -> j iff P[j][i] is nonzero.

    Example:
        >>> associated_graph(SupportPattern.from_rows([[1, 1], [0, 1]])).edges()
        [(1, 1), (2, 1), (2, 2)]
    """
    n = P.n
    return DirectedGraph(tuple(tuple(P.bits[j][i] for j in range(n)) for i in range(n)))


def is_strongly_connected(G: DirectedGraph) -> bool:
    return nx.is_strongly_connected(G.to_networkx())


def is_connected(G: DirectedGraph) -> bool:
    """Connectivity of the underlying undirected graph."""
    return nx.is_weakly_connected(G.to_networkx())


def strongly_connected_components(G: DirectedGraph) -> List[FrozenSet[int]]:
    """Strongly connected components, ordered by their smallest vertex."""
    components = [frozenset(c) for c in nx.strongly_connected_components(G.to_networkx())]
    return sorted(components, key=min)


def degree_profile(G: DirectedGraph) -> List[Tuple[int, int]]:
    """
    (out-degree, in-degree) of every vertex, in vertex order.

    A loop counts once towards each degree.

    Example:
        >>> degree_profile(DirectedGraph(((True, True), (False, True))))
        [(2, 1), (1, 2)]
    """
    n = G.n
    return [
        (sum(G.adjacency[v]), sum(G.adjacency[u][v] for u in range(n)))
        for v in range(n)
    ]


def sorted_degree_profile(G: DirectedGraph) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted(degree_profile(G)))


def canonical_graph(G: DirectedGraph) -> Adjacency:
    """
    Lexicographically least row-major adjacency over all vertex relabelings.

    Two graphs are isomorphic exactly when their canonical forms agree.

    Args:
        G: Graph on at most MAX_CANONICAL_VERTICES vertices

    Returns:
        The canonical adjacency matrix
    """
    n = G.n
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(
            f"canonical_graph supports at most {MAX_CANONICAL_VERTICES} vertices, got {n}"
        )
    best = None
    for perm in itertools.permutations(range(n)):
        candidate = tuple(
            tuple(G.adjacency[perm[a]][perm[b]] for b in range(n)) for a in range(n)
        )
        if best is None or candidate < best:
            best = candidate
    return best


def graphs_isomorphic(G: DirectedGraph, H: DirectedGraph) -> bool:
    if G.n != H.n:
        return False
    return nx.is_isomorphic(G.to_networkx(), H.to_networkx())


def format_graph(G: DirectedGraph) -> str:
    return "\n".join("".join("1" if x else "0" for x in row) for row in G.adjacency)


def parse_graph(text: str) -> DirectedGraph:
    """Read adjacency rows of 0/1 characters, one row per line."""
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    for row in rows:
        if len(row) != len(rows) or set(row) - {"0", "1"}:
            raise ParseError(f"Bad adjacency row {row!r} for a graph on {len(rows)} vertices")
    return DirectedGraph(tuple(tuple(c == "1" for c in row) for row in rows))
