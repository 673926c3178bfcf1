"""Table and figure-data rows for the CSV exporters."""

import logging
from collections.abc import Iterable
from typing import Any, Optional

from .entanglement import (
    concurrence_excitation,
    dicke_closed_form,
    hex_torus_closed_form,
    hypercube_closed_form,
    node_entanglement,
    orthoplex_closed_form,
)
from .families import (
    PLATONIC_SOLIDS,
    hypercube_graph,
    orthoplex_hypergraph,
    platonic,
    simplex_hypergraph,
    triangular_torus,
)
from .hypergraph import Hypergraph
from .types import FamilyClosedForm, FamilyTag

logger = logging.getLogger(__name__)

TABLE1_HEADER = ("solid", "N", "C12", "gamma")
COMPARISON_HEADER = ("N", "family", "gamma", "C_dist1", "C_dist2")
POLYTOPE_HEADER = ("family", "m", "k", "N", "gamma")
FIGZ_HEADER = ("N", "C2_rest")

Row = tuple[Any, ...]


def table1_rows(mode: str = "edges") -> list[Row]:
    """Largest pair concurrence and entanglement ratio of vertex 0 for each Platonic solid."""
    rows = []
    for solid in PLATONIC_SOLIDS:
        G = platonic(solid, mode)
        largest = max(concurrence_excitation(G, 0, w) for w in range(1, G.n))
        rows.append((solid, G.n, largest, node_entanglement(G, 0).gamma))
    return rows


def _by_distance(G: Hypergraph, v: int = 0) -> tuple[float, dict[float, float]]:
    report = node_entanglement(G, v)
    largest: dict[float, float] = {}
    for pair in report.pairwise:
        largest[pair.distance] = max(largest.get(pair.distance, 0.0), pair.concurrence)
    return report.gamma, largest


def _closed_row(form: FamilyClosedForm) -> Row:
    by_distance = form.concurrence_by_distance
    return (form.size, form.family, form.gamma, by_distance.get(1), by_distance.get(2))


def fig_comparison_rows(max_n: int = 20) -> list[Row]:
    """Entanglement ratio against N for the regular families, plus the two torus cuts."""
    rows: list[Row] = [_closed_row(dicke_closed_form(N, 2)) for N in range(3, max_n + 1)]
    rows += [_closed_row(orthoplex_closed_form(m)) for m in range(3, max_n // 2 + 1)]
    rows += [_closed_row(hypercube_closed_form(m)) for m in range(2, 7)]
    rows.append(_closed_row(hex_torus_closed_form(24)))
    gamma, largest = _by_distance(triangular_torus(5, 5))
    rows.append((25, FamilyTag.TRI_TORUS, gamma, largest.get(1), largest.get(2)))
    return rows


def fig_polytope_rows(max_vertices: int = 12) -> list[Row]:
    """Entanglement ratio of k-uniform polytope hypergraphs, computed from the states."""
    rows: list[Row] = []
    for m in range(3, max_vertices + 1):
        for k in range(1, m):
            rows.append(_polytope_row(FamilyTag.SIMPLEX, m, k, simplex_hypergraph(m, k)))
    for m in range(2, max_vertices // 2 + 1):
        for k in range(2, m + 1):
            rows.append(_polytope_row(FamilyTag.ORTHOPLEX, m, k, orthoplex_hypergraph(m, k)))
    m = 2
    while 2**m <= max_vertices:
        rows.append(_polytope_row(FamilyTag.HYPERCUBE, m, 2, hypercube_graph(m)))
        m += 1
    return rows


def _polytope_row(family: str, m: int, k: int, G: Hypergraph) -> Row:
    return (family, m, k, G.n, node_entanglement(G, 0).gamma)


def fig_figz_rows(k: int = 2, sizes: Optional[Iterable[int]] = None) -> list[Row]:
    """Squared generalized concurrence 4k(N-k)/N^2 of one vertex in D_N^k."""
    sizes = range(k + 1, 21) if sizes is None else sizes
    return [(N, 4.0 * k * (N - k) / N**2) for N in sizes]
