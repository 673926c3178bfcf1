"""Hypergraphs: incidence metrics, predicates, automorphisms and product factorization."""

import logging
import math
import threading
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Optional

import networkx as nx
import numpy as np

from .decorators import budget_guard
from .exceptions import HypergraphValidationError, PreconditionError
from .symmetry import Permutation, PermutationGroup
from .types import HypergraphPredicates, VertexPairStats

logger = logging.getLogger(__name__)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count and a canonical set of hyperedges

    Edges are strictly increasing vertex tuples, sorted lexicographically.
    Build instances with validate() unless the edges are already canonical.
    """

    n: int
    edges: tuple[Edge, ...]
    _lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise HypergraphValidationError(f"Vertex count must be a nonnegative int, got {self.n}")
        for edge in self.edges:
            if not edge:
                raise HypergraphValidationError("Empty edge")
            if any(v < 0 or v >= self.n for v in edge):
                raise HypergraphValidationError(
                    f"Edge {list(edge)} has a vertex index out of range [0, {self.n})"
                )
            if any(a >= b for a, b in zip(edge, edge[1:])):
                raise HypergraphValidationError(f"Edge {list(edge)} is not strictly increasing")
        if list(self.edges) != sorted(set(self.edges)):
            raise HypergraphValidationError("Edges must be unique and sorted")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def uniformity(self) -> Optional[int]:
        sizes = {len(edge) for edge in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident on each vertex."""
        table: list[list[int]] = [[] for _ in range(self.n)]
        for index, edge in enumerate(self.edges):
            for v in edge:
                table[v].append(index)
        return tuple(tuple(row) for row in table)

    @cached_property
    def section_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=np.int64)
        for edge in self.edges:
            for a, b in combinations(edge, 2):
                matrix[a, b] += 1
                matrix[b, a] += 1
        return matrix

    @cached_property
    def skeleton(self) -> nx.Graph:
        """2-section graph: vertices adjacent when they share an edge."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for edge in self.edges:
            graph.add_edges_from(combinations(edge, 2))
        return graph

    @cached_property
    def _distances(self) -> dict[int, dict[int, int]]:
        return {}

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise HypergraphValidationError(f"Vertex {v} out of range [0, {self.n})")

    def _check_pair(self, v: int, w: int) -> None:
        self._check_vertex(v)
        self._check_vertex(w)
        if v == w:
            raise PreconditionError(f"Pair operations need distinct vertices, got {v} twice")

    def degree(self, v: int) -> int:
        """Number of edges incident on v."""
        self._check_vertex(v)
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(row) for row in self.incidence]

    def section(self, v: int, w: int) -> int:
        """Number of edges containing both v and w."""
        self._check_pair(v, w)
        return int(self.section_matrix[v, w])

    def joint_neighborhood(self, v: int, w: int) -> int:
        """Number of sets W with both W+v and W+w edges (W avoids v and w)."""
        self._check_pair(v, w)
        count = 0
        for index in self.incidence[v]:
            edge = self.edges[index]
            if w in edge:
                continue
            partner = tuple(sorted((set(edge) - {v}) | {w}))
            if partner in self.edge_set:
                count += 1
        return count

    def distance(self, v: int, w: int) -> float:
        """Shortest chain length through shared edges; math.inf if disconnected."""
        self._check_pair(v, w)
        with self._lock:
            lengths = self._distances.get(v)
            if lengths is None:
                lengths = nx.single_source_shortest_path_length(self.skeleton, v)
                self._distances[v] = lengths
        return float(lengths.get(w, math.inf))

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return sorted(self.skeleton.neighbors(v))

    def pair_stats(self, v: int, w: int) -> VertexPairStats:
        return VertexPairStats(
            degree_v=self.degree(v),
            degree_w=self.degree(w),
            section=self.section(v, w),
            joint_neighborhood=self.joint_neighborhood(v, w),
            distance=self.distance(v, w),
            edge_count=self.edge_count,
        )

    def predicates(self) -> HypergraphPredicates:
        connected = self.n > 0 and nx.is_connected(self.skeleton)
        regular = len(set(self.degrees())) <= 1
        adjacent_sections = {
            int(self.section_matrix[a, b]) for a, b in self.skeleton.edges() if a != b
        }
        return HypergraphPredicates(
            connected=connected,
            k_uniform=self.uniformity is not None,
            regular=regular,
            distance1_regular=regular and len(adjacent_sections) <= 1,
        )

    def constant_section(self) -> Optional[int]:
        """Common section of adjacent pairs when it is constant."""
        sections = {int(self.section_matrix[a, b]) for a, b in self.skeleton.edges()}
        return sections.pop() if len(sections) == 1 else None

    def restrict(self, vertices: Sequence[int]) -> "Hypergraph":
        """Traces of the edges on the given vertices, relabeled by position."""
        local = {v: i for i, v in enumerate(vertices)}
        traces = set()
        for edge in self.edges:
            trace = tuple(sorted(local[v] for v in edge if v in local))
            if trace:
                traces.add(trace)
        return Hypergraph(len(vertices), tuple(sorted(traces)))


def validate(n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Canonicalize a raw vertex count and edge list

    Args:
        n: Vertex count
        edges: Iterable of vertex-index collections

    Duplicate edges are dropped with a warning.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise HypergraphValidationError(f"Vertex count must be a nonnegative int, got {n!r}")
    canonical: list[Edge] = []
    for raw in edges:
        vertices = [int(v) for v in raw]
        if not vertices:
            raise HypergraphValidationError("Empty edge")
        if len(set(vertices)) != len(vertices):
            raise HypergraphValidationError(f"Edge {vertices} repeats a vertex")
        for v in vertices:
            if not 0 <= v < n:
                raise HypergraphValidationError(
                    f"Edge {vertices}: vertex index {v} out of range [0, {n})"
                )
        canonical.append(tuple(sorted(vertices)))
    unique = sorted(set(canonical))
    if len(unique) != len(canonical):
        logger.warning(f"Dropped {len(canonical) - len(unique)} duplicate edge(s)")
    return Hypergraph(n, tuple(unique))


@dataclass(frozen=True)
class ProductDecomposition:
    """Vertex blocks and factor hypergraphs whose edge unions rebuild G"""

    blocks: tuple[tuple[int, ...], ...]
    factors: tuple[Hypergraph, ...]

    def rebuild(self, n: int) -> Hypergraph:
        partial: list[tuple[int, ...]] = [()]
        for block, factor in zip(self.blocks, self.factors):
            partial = [
                acc + tuple(block[i] for i in edge) for acc in partial for edge in factor.edges
            ]
        return validate(n, partial)

    def label(self) -> str:
        return "|".join("".join(str(v) for v in block) for block in self.blocks)


def _split_order(G: Hypergraph) -> list[int]:
    order = [0]
    seen = {0}
    for _, child in nx.bfs_edges(G.skeleton, 0):
        if child not in seen:
            order.append(child)
            seen.add(child)
    order.extend(v for v in range(G.n) if v not in seen)
    return order


def _binary_split(G: Hypergraph) -> Optional[tuple[list[int], list[int]]]:
    """Find V1 containing vertex 0 with |e & V1| constant and E = E1 x E2."""
    if G.n < 2 or not G.edges:
        return None
    order = _split_order(G)
    smallest = min(len(edge) for edge in G.edges)
    edge_count = G.edge_count

    for excitations in range(1, smallest):
        inside = [0] * edge_count
        open_slots = [len(edge) for edge in G.edges]
        side = [0] * G.n

        def feasible(v: int) -> bool:
            return all(
                inside[i] <= excitations and inside[i] + open_slots[i] >= excitations
                for i in G.incidence[v]
            )

        def assign(v: int, value: int) -> None:
            side[v] = value
            for i in G.incidence[v]:
                open_slots[i] -= 1
                inside[i] += value

        def unassign(v: int, value: int) -> None:
            for i in G.incidence[v]:
                open_slots[i] += 1
                inside[i] -= value

        def search(position: int) -> Optional[list[int]]:
            if position == len(order):
                first = [v for v in range(G.n) if side[v] == 1]
                if len(first) == G.n:
                    return None
                left = {tuple(v for v in edge if side[v]) for edge in G.edges}
                right = {tuple(v for v in edge if not side[v]) for edge in G.edges}
                return first if len(left) * len(right) == edge_count else None
            v = order[position]
            choices = (1,) if position == 0 else (1, 0)
            for value in choices:
                assign(v, value)
                if feasible(v):
                    found = search(position + 1)
                    if found is not None:
                        return found
                unassign(v, value)
            return None

        first = search(0)
        if first is not None:
            second = [v for v in range(G.n) if v not in set(first)]
            return first, second
    return None


@budget_guard("max_product_vertices", lambda G: G.n)
def product_decompose(G: Hypergraph) -> Optional[ProductDecomposition]:
    """Finest vertex partition factoring G into a product hypergraph

    Args:
        G: Hypergraph to factor

    Returns None when G has no nontrivial decomposition.
    """
    blocks = _finest_blocks(G, list(range(G.n)))
    if len(blocks) < 2:
        return None
    blocks.sort(key=lambda block: block[0])
    factors = tuple(G.restrict(block) for block in blocks)
    logger.debug(f"Product decomposition {'|'.join(map(str, blocks))}")
    return ProductDecomposition(tuple(tuple(block) for block in blocks), factors)


def _finest_blocks(G: Hypergraph, labels: list[int]) -> list[list[int]]:
    split = _binary_split(G)
    if split is None:
        return [labels]
    blocks = []
    for part in split:
        blocks.extend(_finest_blocks(G.restrict(part), [labels[v] for v in part]))
    return [sorted(block) for block in blocks]


def is_complete_multipartite(G: Hypergraph) -> Optional[list[list[int]]]:
    """Color classes V1..Vk when G is the complete multipartite hypergraph on them

    Args:
        G: k-uniform hypergraph
    """
    k = G.uniformity
    if k is None:
        raise PreconditionError("Complete multipartite test needs a uniform hypergraph")
    if k == 1:
        every_singleton = G.edges == tuple((v,) for v in range(G.n))
        return [list(range(G.n))] if every_singleton else None
    decomposition = product_decompose(G)
    if decomposition is None or len(decomposition.blocks) != k:
        return None
    for block, factor in zip(decomposition.blocks, decomposition.factors):
        if factor.edges != tuple((i,) for i in range(len(block))):
            return None
    return [list(block) for block in decomposition.blocks]


def _vertex_signature(G: Hypergraph, v: int) -> tuple[int, tuple[int, ...]]:
    return len(G.incidence[v]), tuple(sorted(len(G.edges[i]) for i in G.incidence[v]))


@budget_guard("max_automorphism_vertices", lambda G: G.n)
def automorphism_group(G: Hypergraph) -> PermutationGroup:
    """All vertex permutations mapping the edge set onto itself

    Args:
        G: Hypergraph within the automorphism budget
    """
    n = G.n
    if n == 0:
        return PermutationGroup.from_elements(0, [Permutation(())])
    signatures = [_vertex_signature(G, v) for v in range(n)]
    order = _split_order(G)
    position = {v: i for i, v in enumerate(order)}
    completing: list[list[Edge]] = [[] for _ in range(n)]
    for edge in G.edges:
        completing[max(position[v] for v in edge)].append(edge)
    sections = G.section_matrix
    mapping = [-1] * n
    used = [False] * n
    elements: list[Permutation] = []

    def extend(i: int) -> None:
        if i == n:
            elements.append(Permutation(tuple(mapping)))
            return
        v = order[i]
        for u in range(n):
            if used[u] or signatures[u] != signatures[v]:
                continue
            if any(
                sections[v, order[j]] != sections[u, mapping[order[j]]] for j in range(i)
            ):
                continue
            mapping[v] = u
            used[u] = True
            if all(
                tuple(sorted(mapping[x] for x in edge)) in G.edge_set for edge in completing[i]
            ):
                extend(i + 1)
            mapping[v] = -1
            used[u] = False

    extend(0)
    logger.debug(f"Automorphism group of order {len(elements)} on {n} vertices")
    return PermutationGroup.from_elements(n, elements)


def is_edge_transitive(G: Hypergraph) -> bool:
    """True iff automorphisms act transitively on the edges."""
    if not G.edges:
        return True
    group = automorphism_group(G)
    first = G.edges[0]
    orbit = {tuple(sorted(sigma(v) for v in first)) for sigma in group.elements}
    return len(orbit) == G.edge_count
